#!/usr/bin/env python3
"""Compare the compiled (gmpy2) and pure-Python (fractions) scalar backends.

Every hot kernel here is arbitrary-precision rational arithmetic, so the
backend is swapped wholesale at import time; this script runs each kernel
in a fresh subprocess per backend and prints the wall times side by side.
"""

import json
import subprocess
import sys
import time

KERNELS = {
    "short vectors (E8, norms to -8)": """
from moduliq import qq
from moduliq.lattices import build_standard
from moduliq.shortvec import count_coset_vectors
e8 = build_standard("E8")
total = sum(count_coset_vectors(e8, None, qq(-2 * k)) for k in range(1, 5))
assert total == 240 + 2160 + 6720 + 17520
""",
    "q-series (1/Delta to q^40)": """
from moduliq.qseries import inverse_delta
series = inverse_delta(40)
assert series.coeff(1).rational() == 324
""",
    "sextic discriminant (uncached)": """
from moduliq.luna import sextic_discriminant
sextic_discriminant.cache_clear()
assert sextic_discriminant().terms[(0, 0, 0, 0, 5)] == -46656
""",
    "degree-12 line restriction": """
from moduliq.luna import disc12_vanishing_order
for seed in (1, 2, 3):
    assert disc12_vanishing_order(seed=seed)["order"] == 10
""",
    "obstruction basis to q^12": """
from moduliq.modforms import obstruction_eisenstein, obstruction_cusp_basis
obstruction_eisenstein(12)
obstruction_cusp_basis(12)
""",
}


def run_kernel(code: str, backend: str) -> float:
    start = time.perf_counter()
    subprocess.run(
        [sys.executable, "-c", code],
        check=True,
        env={"MODULIQ_BACKEND": backend, "PATH": "/usr/bin:/bin:/usr/local/bin"},
    )
    return time.perf_counter() - start


def main():
    # subtract interpreter start + import cost so kernels compare cleanly
    baseline = {
        backend: min(run_kernel("import moduliq", backend) for _ in range(3))
        for backend in ("gmpy2", "fractions")
    }
    rows = []
    for name, code in KERNELS.items():
        times = {}
        for backend in ("gmpy2", "fractions"):
            try:
                times[backend] = max(
                    run_kernel(code, backend) - baseline[backend], 0.0
                )
            except subprocess.CalledProcessError:
                times[backend] = float("nan")
        rows.append((name, times["gmpy2"], times["fractions"]))
    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'gmpy2':>9}  {'fractions':>9}  {'speedup':>7}")
    for name, fast, slow in rows:
        ratio = slow / fast if fast else float("inf")
        print(f"{name:<{width}}  {fast:>8.2f}s  {slow:>8.2f}s  {ratio:>6.1f}x")
    print(json.dumps({name: {"gmpy2": f, "fractions": s} for name, f, s in rows}))


if __name__ == "__main__":
    main()
