"""Step-by-step Wilder parabolic SAR on the rise-then-fall fixture.

Writes sar_rise_fall.csv (input bars) and sar_rise_fall_golden.csv.
"""
import csv
import datetime as dt
import pathlib

HERE = pathlib.Path(__file__).resolve().parent.parent

BARS = [  # open, high, low, close
    (100.0, 101.0, 99.0, 100.5),
    (100.5, 102.0, 100.0, 101.5),
    (101.5, 103.5, 101.0, 103.0),
    (103.0, 105.0, 102.5, 104.5),
    (104.5, 106.0, 104.0, 105.5),
    (105.5, 105.8, 103.0, 103.5),
    (103.5, 104.0, 101.0, 101.5),
    (101.5, 102.0, 99.5, 100.0),
    (100.0, 100.5, 98.0, 98.5),
    (98.5, 99.0, 96.5, 97.0),
]
A0, STEP, AMAX = 0.02, 0.02, 0.2


def dates(n):
    d = dt.date(2024, 1, 2)
    out = []
    while len(out) < n:
        if d.weekday() < 5:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def recurse():
    hi = [b[1] for b in BARS]
    lo = [b[2] for b in BARS]
    cl = [b[3] for b in BARS]
    up = cl[1] >= cl[0]
    sar = lo[0] if up else hi[0]
    ep = hi[0] if up else lo[0]
    a = A0
    rows = [(sar, ep, a, "up" if up else "down", "")]
    for t in range(1, len(BARS)):
        if up:
            s = sar + a * (ep - sar)
            s = min([s, lo[t - 1]] + ([lo[t - 2]] if t >= 2 else []))
            if lo[t] < s:
                up, s, ep, a = False, ep, lo[t], A0
            elif hi[t] > ep:
                ep, a = hi[t], min(a + STEP, AMAX)
        else:
            s = sar - a * (sar - ep)
            s = max([s, hi[t - 1]] + ([hi[t - 2]] if t >= 2 else []))
            if hi[t] > s:
                up, s, ep, a = True, ep, hi[t], A0
            elif lo[t] < ep:
                ep, a = lo[t], min(a + STEP, AMAX)
        sar = s
        rows.append((sar, ep, a, "up" if up else "down", "1" if cl[t] > sar else "-1"))
    return rows


def main():
    ds = dates(len(BARS))
    with open(HERE / "sar_rise_fall.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "open", "high", "low", "close", "adj_close", "volume"])
        for d, (o, h, l, c) in zip(ds, BARS):
            w.writerow([d.isoformat(), o, h, l, c, c, 1000000])
    with open(HERE / "sar_rise_fall_golden.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "sar", "extreme_point", "alpha", "trend", "signal"])
        for d, (s, e, a, tr, sig) in zip(ds, recurse()):
            w.writerow([d.isoformat(), repr(s), repr(e), repr(a), tr, sig])


if __name__ == "__main__":
    main()
