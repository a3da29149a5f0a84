"""Differential fuzzing: the compositional semantics against brute force.

Cross-checks three pairs of independent routes on seeded random inputs:

* weak sequencing vs. permutation filtering
* trace interleaving vs. position-subset merging
* parse(render(fragment)) vs. the fragment itself

    python3 scripts/differential_fuzz.py [--cases 2000] [--seed 7]
"""

import argparse
import random
import sys
import time

from seqtrace import (
    GeneratorConfig,
    Message,
    canonicalize,
    generate_fragments,
    interleave_traces,
    oracle_interleave,
    oracle_weak,
    parse,
    render_fragment,
    weak,
)

POOL = ("A", "B", "C", "D")


def random_message(rng: random.Random) -> Message:
    return Message(rng.choice(POOL), f"m{rng.randint(1, 3)}", rng.choice(POOL))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    start = time.perf_counter()

    weak_bad = 0
    for _ in range(args.cases):
        ms = tuple(random_message(rng) for _ in range(rng.randint(0, 7)))
        if weak(ms) != oracle_weak(ms):
            weak_bad += 1
    print(f"weak vs permutation oracle:   {args.cases} cases, {weak_bad} mismatches")

    shuffle_bad = 0
    for _ in range(args.cases):
        nx = rng.randint(0, 5)
        x = tuple(random_message(rng) for _ in range(nx))
        y = tuple(random_message(rng) for _ in range(rng.randint(0, 10 - nx)))
        if interleave_traces(x, y) != oracle_interleave(x, y):
            shuffle_bad += 1
    print(f"shuffle vs position oracle:   {args.cases} cases, {shuffle_bad} mismatches")

    trip_bad = 0
    cfg = GeneratorConfig(
        max_depth=4, seed=args.seed, include_filters=True, include_lifecycle=True
    )
    frags = generate_fragments(cfg, args.cases)
    for frag in frags:
        if parse(render_fragment(frag)).root != canonicalize(frag):
            trip_bad += 1
    print(f"parse/render round trip:      {len(frags)} cases, {trip_bad} mismatches")

    total_bad = weak_bad + shuffle_bad + trip_bad
    print(f"total: {total_bad} mismatches in {time.perf_counter() - start:.1f}s")
    return 1 if total_bad else 0


if __name__ == "__main__":
    sys.exit(main())
