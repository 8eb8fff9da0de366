#!/usr/bin/env python3
"""Fuzz the lexer+parser front end and report the diagnostic landscape.

Feeds a mix of raw byte blobs and mutated word-splice text through
tokenize+parse, confirming totality (no exceptions for any input) and
that every reported code is registered. Prints a histogram of observed
diagnostic codes and throughput numbers.

Usage: python scripts/fuzz.py [--count N] [--seed S] [--programs]
"""

from __future__ import annotations

import argparse
import collections
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from generators import program, random_bytes, random_texty  # noqa: E402

from natprog import (  # noqa: E402
    REGISTRY,
    parse_program,
    realize_program,
    run_source,
    tokenize,
)


def front_end_fuzz(count: int, seed: int) -> collections.Counter:
    rng = random.Random(seed)
    histogram: collections.Counter = collections.Counter()
    for index in range(count):
        blob = random_bytes(rng) if index % 2 == 0 else random_texty(rng)
        lexed = tokenize(blob)
        parsed = parse_program(lexed.tokens)
        for diagnostic in (*lexed.diagnostics, *parsed.diagnostics):
            histogram[diagnostic.code] += 1
    return histogram


def whole_pipeline_fuzz(count: int, seed: int) -> collections.Counter:
    """Generated clean programs must run without faults other than R10x."""
    rng = random.Random(seed)
    histogram: collections.Counter = collections.Counter()
    for _ in range(count):
        source = realize_program(program(rng))
        compiled, result = run_source(source, inputs=[], step_limit=5_000)
        if compiled.diagnostics:
            raise SystemExit(f"generator produced a dirty program:\n{source}")
        if result.runtime_error is not None:
            histogram[result.runtime_error.code] += 1
        else:
            histogram["clean"] += 1
    return histogram


def main() -> None:
    cli = argparse.ArgumentParser(description=__doc__)
    cli.add_argument("--count", type=int, default=100_000)
    cli.add_argument("--seed", type=int, default=20260825)
    cli.add_argument(
        "--programs",
        action="store_true",
        help="also fuzz whole-pipeline runs with generated clean programs",
    )
    args = cli.parse_args()

    started = time.perf_counter()
    histogram = front_end_fuzz(args.count, args.seed)
    elapsed = time.perf_counter() - started
    print(f"front end: {args.count} inputs in {elapsed:.1f}s "
          f"({args.count / elapsed:,.0f}/s), no crashes")
    unregistered = [code for code in histogram if code not in REGISTRY]
    for code, hits in sorted(histogram.items()):
        print(f"  {code}: {hits}")
    if unregistered:
        raise SystemExit(f"unregistered codes observed: {unregistered}")

    if args.programs:
        count = max(args.count // 50, 100)
        started = time.perf_counter()
        histogram = whole_pipeline_fuzz(count, args.seed)
        elapsed = time.perf_counter() - started
        print(f"\nwhole pipeline: {count} generated programs in {elapsed:.1f}s")
        for code, hits in sorted(histogram.items()):
            print(f"  {code}: {hits}")


if __name__ == "__main__":
    main()
