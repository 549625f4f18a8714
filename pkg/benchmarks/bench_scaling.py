"""
Benchmark: wall-clock scaling of seeded sessions with trial and shard count.

Sessions are cut into fixed blocks, so time should grow linearly with
trials, and worker processes should divide it once there are enough blocks.

Usage:
    uv run python benchmarks/bench_scaling.py
"""

import timeit

from tfqkd.Eve import Absent, FullInterceptResend, TimeSliceAttack
from tfqkd.Protocol import BLOCK_SIZE, SessionConfig, run_session
from tfqkd.PulseModel import DimensionlessParams

PARAMS = DimensionlessParams(1.65, 0.05, 2.5)


def bench_trials(sizes: list[int], eve, repeats: int = 3) -> dict[int, float]:
    """Benchmark run_session in-process for increasing trial counts."""
    results = {}
    for n in sizes:
        config = SessionConfig(PARAMS, n, 0, eve)
        t = timeit.timeit(lambda: run_session(config, workers=1), number=repeats)
        results[n] = t / repeats
    return results


def bench_shards(shards: list[int], trials: int, repeats: int = 3) -> dict[int, float]:
    """Benchmark one session split over 1, 2, 4, ... worker processes."""
    results = {}
    for s in shards:
        config = SessionConfig(PARAMS, trials, 0, TimeSliceAttack(0.05), shards=s)
        t = timeit.timeit(lambda: run_session(config), number=repeats)
        results[s] = t / repeats
    return results


def format_time(seconds: float) -> str:
    if seconds < 1e-3:
        return f"{seconds * 1e6:8.1f} us"
    elif seconds < 1:
        return f"{seconds * 1e3:8.2f} ms"
    else:
        return f"{seconds:8.3f}  s"


def print_results(name: str, label: str, results: dict[int, float]) -> None:
    print(f"\n{'=' * 60}")
    print(f"  {name}")
    print(f"{'=' * 60}")
    print(f"  {label:>10}  {'Time':>12}  {'Ratio vs first':>18}")
    print(f"  {'-' * 10}  {'-' * 12}  {'-' * 18}")

    baseline = list(results.values())[0]
    for size, elapsed in results.items():
        ratio = elapsed / baseline if baseline > 0 else 0
        print(f"  {size:>10,}  {format_time(elapsed)}  {ratio:>17.2f}x")


def main() -> None:
    sizes = [BLOCK_SIZE, 4 * BLOCK_SIZE, 16 * BLOCK_SIZE, 64 * BLOCK_SIZE]

    print("tfqkd Session Benchmark")
    print("=" * 60)

    for name, eve in (
        ("no eavesdropper", Absent()),
        ("full intercept-resend", FullInterceptResend()),
        ("time-slice attack", TimeSliceAttack(0.05)),
    ):
        print_results(name, "Trials", bench_trials(sizes, eve))

    print_results("shards (slice attack)", "Shards", bench_shards([1, 2, 4, 8], 64 * BLOCK_SIZE))
    print()


if __name__ == "__main__":
    main()
