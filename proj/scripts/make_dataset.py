#!/usr/bin/env python3
"""Build an 8x8 handwritten-digits CSV in optdigits format (64 ints 0-16, then label).

The scikit-learn digits set (1797 genuine 8x8 samples) is expanded by light
augmentation (pixel jitter and one-pixel shifts) until every digit has ~562
entries, for 5621 rows total.
"""
import argparse

import numpy as np
from sklearn.datasets import load_digits


def augment(img, rng):
    out = img.copy()
    # one-pixel circular shift half of the time
    if rng.random() < 0.5:
        axis = int(rng.integers(0, 2))
        out = np.roll(out, int(rng.choice([-1, 1])), axis=axis)
    # +-1 jitter on a few pixels
    n_jitter = int(rng.integers(2, 7))
    ys = rng.integers(0, 8, n_jitter)
    xs = rng.integers(0, 8, n_jitter)
    out[ys, xs] = np.clip(out[ys, xs] + rng.choice([-1, 1], n_jitter), 0, 16)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="data/digits_train.csv")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--total", type=int, default=5621)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    d = load_digits()
    images = d.images.astype(int)
    labels = d.target

    per_digit = args.total // 10          # 562
    extra = args.total - per_digit * 10   # 1 leftover row

    rows = []
    for digit in range(10):
        base = images[labels == digit]
        target = per_digit + (1 if digit < extra else 0)
        pool = [base[i] for i in range(len(base))]
        i = 0
        while len(pool) < target:
            pool.append(augment(base[i % len(base)], rng))
            i += 1
        for img in pool[:target]:
            rows.append(np.append(img.ravel(), digit))

    order = rng.permutation(len(rows))
    with open(args.out, "w") as f:
        for i in order:
            f.write(",".join(str(int(v)) for v in rows[i]) + "\n")
    print(f"wrote {len(rows)} rows to {args.out}")


if __name__ == "__main__":
    main()
