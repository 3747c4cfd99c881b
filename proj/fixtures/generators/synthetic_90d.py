"""Synthetic 90-session fixture for the end-to-end smoke run.

Writes synthetic_90d_prices.csv, synthetic_90d_sentiment.csv and
synthetic_90d_news.csv next to this directory. Deterministic for a given seed.
"""
import csv
import datetime as dt
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent.parent
SEED = 90
N = 90
SOURCES = ["DowJones", "Benzinga"]
MODELS = ["GPT2", "FinBERT"]


def sessions(n):
    d = dt.date(2024, 1, 2)
    out = []
    while len(out) < n:
        if d.weekday() < 5:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def prices(rng, days):
    rows = []
    close = 4700.0
    for i, d in enumerate(days):
        # a drifting random walk with a slow cycle so indicators change state
        ret = 0.0004 + 0.012 * rng.gauss(0, 1) + 0.004 * ((i // 15) % 2 * 2 - 1)
        open_ = close
        close = round(close * (1 + ret), 2)
        high = round(max(open_, close) * (1 + abs(rng.gauss(0, 0.003))), 2)
        low = round(min(open_, close) * (1 - abs(rng.gauss(0, 0.003))), 2)
        volume = int(3_000_000_000 * (1 + 0.2 * rng.random()))
        rows.append((d.isoformat(), f"{open_:.2f}", f"{high:.2f}", f"{low:.2f}", f"{close:.2f}",
                     f"{close:.2f}", volume))
    return rows


def sentiment(rng, days, rows):
    closes = [float(r[4]) for r in rows]
    out = []
    for i, d in enumerate(days[:-1]):
        nxt = closes[i + 1] / closes[i] - 1
        tendency = 1 if nxt > 0.004 else (-1 if nxt < -0.004 else 0)
        for source in SOURCES:
            for model in MODELS:
                skill = 0.6 if model == "FinBERT" else 0.45
                for _ in range(rng.randint(0, 3)):
                    label = tendency if rng.random() < skill else rng.choice([-1, 0, 1])
                    # some articles after the close or on the weekend roll forward
                    hour = rng.choice([8, 10, 12, 15, 17, 20])
                    day = d + dt.timedelta(days=2) if rng.random() < 0.05 and d.weekday() == 4 else d
                    ts = dt.datetime(day.year, day.month, day.day, hour, rng.randrange(60))
                    out.append((ts.strftime("%Y-%m-%d %H:%M:%S"), source, model, label,
                                f"{0.5 + 0.5 * rng.random():.4f}"))
    out.sort()
    return out


NEWS = [
    ("2024-03-01 09:15:00", "DowJones", "Stocks open higher",
     "Stocks opened higher on Friday as yields eased. Write to Jane Doe at jane@example.com"),
    ("2024-03-04 16:45:00", "Benzinga", "Chipmakers rally",
     "Chipmakers rallied into the close. Photo by Someone"),
    ("", "DowJones", "Undated wire", "Markets were mixed as of 03/05/2024 according to traders."),
    ("2024-03-06 11:00:00", "Benzinga", "Amundi S&P 500 factsheet", "Fund factsheet, not news."),
]


def main():
    rng = random.Random(SEED)
    days = sessions(N)
    rows = prices(rng, days)
    with open(HERE / "synthetic_90d_prices.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "open", "high", "low", "close", "adj_close", "volume"])
        w.writerows(rows)
    with open(HERE / "synthetic_90d_sentiment.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["timestamp_et", "source", "model", "label", "score"])
        w.writerows(sentiment(rng, days, rows))
    with open(HERE / "synthetic_90d_news.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["timestamp_et", "source", "title", "text"])
        w.writerows(NEWS)


if __name__ == "__main__":
    main()
