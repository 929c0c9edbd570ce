#!/usr/bin/env python3
"""Writes the spec corpus used by the oracle and matrix-identity suites."""

import argparse
import itertools
import json
import random
from pathlib import Path


def subsets(dim, min_size):
    out = []
    for size in range(min_size, dim + 1):
        out.extend(itertools.combinations(range(1, dim + 1), size))
    return out


def mask(subset):
    return sum(1 << (r - 1) for r in subset)


def supp_lists(dim, extra):
    base = [()] + [(r,) for r in range(1, dim + 1)]
    members = sorted(set(base) | set(extra), key=mask)
    return [list(m) for m in members]


def lattice(dim):
    return supp_lists(dim, subsets(dim, 2))


def orbit_representatives(dim):
    """One supporting class per orbit under coordinate permutations."""
    free = subsets(dim, 2)
    perms = list(itertools.permutations(range(1, dim + 1)))
    seen = set()
    reps = []
    for code in range(1 << len(free)):
        chosen = frozenset(free[b] for b in range(len(free)) if code >> b & 1)
        orbit = {
            frozenset(tuple(sorted(p[r - 1] for r in s)) for s in chosen) for p in perms
        }
        key = min(tuple(sorted(mask(s) for s in o)) for o in orbit)
        if key in seen:
            continue
        seen.add(key)
        reps.append(sorted(chosen, key=mask))
    return reps


def index_of(supp):
    return len(supp) - 1


def spec(type_, rank, nullity, twist, supp1, supp2, label):
    return {
        "type": type_,
        "rank": rank,
        "nullity": nullity,
        "twist": twist,
        "supp1": supp1,
        "supp2": supp2,
        "label": label,
    }


def exceptional(type_, rank, nullities):
    out = []
    for nu in nullities:
        for t in range(nu + 1):
            out.append(spec(type_, rank, nu, t, lattice(t), lattice(nu - t),
                            f"{type_} nu={nu} t={t}"))
    return out


def b_or_c_side(type_, rank, nullity, twist, side_dim, reps, tag):
    out = []
    for i, extra in enumerate(reps):
        supp = supp_lists(side_dim, extra)
        if type_ == "B":
            s1, s2 = supp, lattice(nullity - twist)
        else:
            s1, s2 = lattice(twist), supp
        out.append(spec(type_, rank, nullity, twist, s1, s2,
                        f"{type_}{rank} nu={nullity} t={twist} {tag}{i} ind={index_of(supp)}"))
    return out


def build(seed):
    rng = random.Random(seed)
    corpus = []
    corpus += exceptional("F4", 4, [1, 2, 3])
    corpus.append(spec("F4", 4, 4, 2, lattice(2), lattice(2), "F4 nu=4 t=2"))
    corpus += exceptional("G2", 2, [1, 2, 3])
    corpus.append(spec("G2", 2, 4, 1, lattice(1), lattice(3), "G2 nu=4 t=1"))

    reps3 = orbit_representatives(3)
    corpus += b_or_c_side("B", 3, 3, 3, 3, reps3, "orbit")
    corpus += b_or_c_side("C", 3, 3, 0, 3, reps3, "orbit")
    corpus += b_or_c_side("B", 3, 4, 3, 3, [reps3[-1], reps3[3]], "tail")
    corpus += b_or_c_side("C", 3, 4, 1, 3, [reps3[-1], reps3[4]], "tail")
    corpus += b_or_c_side("B", 3, 2, 2, 2, orbit_representatives(2), "low")
    corpus += b_or_c_side("C", 3, 2, 1, 1, orbit_representatives(1), "low")
    corpus.append(spec("B", 3, 1, 1, lattice(1), lattice(0), "B3 nu=1 t=1"))
    corpus.append(spec("C", 3, 1, 0, lattice(0), lattice(1), "C3 nu=1 t=0"))

    reps4 = orbit_representatives(4)
    picks4 = [reps4[-1]] + rng.sample(reps4[1:-1], 3)
    corpus += b_or_c_side("B", 3, 4, 4, 4, picks4, "wide")
    corpus += b_or_c_side("C", 3, 4, 0, 4, picks4[:2], "wide")

    corpus.append(spec("B", 4, 2, 1, lattice(1), lattice(1), "B4 nu=2 t=1"))
    corpus.append(spec("C", 4, 2, 1, lattice(1), lattice(1), "C4 nu=2 t=1"))

    for nu, t in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 2)]:
        for a, b in itertools.product(orbit_representatives(t), orbit_representatives(nu - t)):
            s1, s2 = supp_lists(t, a), supp_lists(nu - t, b)
            corpus.append(spec("B", 2, nu, t, s1, s2,
                               f"B2 nu={nu} t={t} ind={index_of(s1)},{index_of(s2)}"))
    return corpus


def file_name(i, s):
    return f"{i:03d}_{s['type'].lower()}{s['rank']}_nu{s['nullity']}_t{s['twist']}.json"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    parser.add_argument("--seed", type=int, default=20)
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for old in out.glob("*.json"):
        old.unlink()
    corpus = build(args.seed)
    for i, s in enumerate(corpus):
        (out / file_name(i, s)).write_text(json.dumps(s) + "\n")
    print(f"wrote {len(corpus)} specs to {out}")


if __name__ == "__main__":
    main()
