"""Where the disconnecting-family bound starts to apply on squared cycles.

For each s the three-edge family is validated and compared with the size
threshold; for s = 7 the exact search is run as well.
"""

from __future__ import annotations

import argparse

from graphcode.bounds import lemma31_threshold, lemma31_upper, squared_cycle_family
from graphcode.exact import exact_m
from graphcode.generators import cycle_power


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("sizes", nargs="*", type=int, default=[7, 12, 25, 36, 37, 40])
    args = p.parse_args()
    need = lemma31_threshold(3)
    for s in args.sizes:
        fam = squared_cycle_family(s)
        t = lemma31_upper(fam.host, fam)
        bound = "none" if t is None else f"m <= {2**t}"
        print(f"s={s:<3} family valid, {len(fam.sets)} sets (need > {need}): {bound}")
    value, witness = exact_m(cycle_power(7, 2))
    print(f"exact m(C_7^(2)) = {value}; witness members: {[m.hex() for m in witness.members]}")


if __name__ == "__main__":
    main()
