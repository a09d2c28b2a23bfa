#!/usr/bin/env python3
"""Build the equilikely_py extension module and exercise it end to end.

Run from anywhere inside the repository:

    python3 python/smoke_test.py

The script builds the cdylib with cargo, stages it under a temporary
directory with the import name Python expects, and checks a handful of
known values against the bindings.
"""

import json
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def build_extension() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "equilikely-py", "--release"],
        cwd=REPO_ROOT,
        check=True,
    )
    lib = REPO_ROOT / "target" / "release" / "libequilikely_py.so"
    if not lib.is_file():
        sys.exit(f"expected extension library at {lib}")
    return lib


def main() -> None:
    lib = build_extension()
    with tempfile.TemporaryDirectory() as staging:
        shutil.copy2(lib, Path(staging) / "equilikely_py.so")
        sys.path.insert(0, staging)
        import equilikely_py as eq

        primes = eq.sieve_primes(100)
        assert primes[:5] == [2, 3, 5, 7, 11], primes[:5]
        assert len(primes) == 25, len(primes)

        digits = eq.prime_last_digits(100)
        assert len(digits) == 23, len(digits)
        assert {d: digits.count(d) for d in (1, 3, 7, 9)} == {1: 5, 3: 7, 7: 6, 9: 5}

        assert eq.checkpoint_schedule(1000, 2, 10) == [10, 32, 100, 316, 1000]

        tally = eq.Tally(4)
        for d in digits:
            tally.record((1, 3, 7, 9).index(d))
        assert tally.counts() == [5, 7, 6, 5]
        assert tally.total() == 23
        assert tally.range() == 2
        assert math.isclose(tally.rel_range(), 2 / 23)

        draws = eq.simulate_uniform(seed=7, k=2, n=1000)
        assert draws == eq.simulate_uniform(seed=7, k=2, n=1000), "not deterministic"
        assert set(draws) == {0, 1}
        assert draws != eq.simulate_uniform(seed=7, k=2, n=1000, stream=1)

        assert math.isclose(eq.benford_expected(1), math.log10(2), rel_tol=0, abs_tol=1e-15)
        assert math.isclose(
            eq.theoretical_coin_range(10_000), 79.78845608028654, abs_tol=1e-12
        )

        fit = eq.fit_power_law([(n, 3.0 * math.sqrt(n)) for n in (10, 100, 1000, 10_000)])
        assert abs(fit["exponent"] - 0.5) < 1e-10, fit
        assert abs(fit["log_amplitude"] - math.log10(3.0)) < 1e-10, fit
        assert fit["n_points"] == 4 and fit["dropped_points"] == 0, fit

        report = json.loads(eq.run_primes_json(100_000))
        final = report["trajectories"][0]["checkpoints"][-1]
        assert final["n"] == 9590, final["n"]
        assert -0.70 <= report["beta_fit"]["exponent"] <= -0.50, report["beta_fit"]
        identity = report["beta_fit"]["exponent"] - report["alpha_fit"]["exponent"]
        assert abs(identity + 1.0) < 1e-10, identity

        coin = json.loads(eq.run_coin_json(10_000, 5, 42))
        assert len(coin["trajectories"]) == 5
        assert coin["summary"]["num_runs"] == 5

    print("smoke test passed:")
    print(f"  primes <= 1e5: {final['n']} digits, beta = {report['beta_fit']['exponent']:.4f}")
    print(f"  coin 5 x 1e4:  beta = {coin['beta_fit']['exponent']:.4f}")


if __name__ == "__main__":
    main()
