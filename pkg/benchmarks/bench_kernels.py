#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy reference.

Times the inner loops that dominate a p-Laplace solve (per-iteration
weighted stiffness assembly, element gradients, integrals) and the
web-torsion integrand, on meshes of increasing size.

Usage: python benchmarks/bench_kernels.py [--sizes 64,128,256,512]
"""

import argparse
import time

import numpy as np

from torsio import regular_polygon, structured_triangle_mesh
from torsio.kernels import available_backends


def time_call(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_mesh(n):
    tri = regular_polygon(3, 1.0)
    mesh = structured_triangle_mesh(tri, n)
    rng = np.random.default_rng(0)
    u = rng.normal(size=mesh.n_nodes)
    w = rng.uniform(0.5, 2.0, size=mesh.n_triangles)
    backends = available_backends()
    rows = []
    for name, impl in backends.items():
        areas, gx, gy = impl.tri_geometry(mesh.nodes, mesh.triangles)
        t_geom = time_call(impl.tri_geometry, mesh.nodes, mesh.triangles)
        t_stiff = time_call(impl.stiffness_values, areas, gx, gy, w)
        t_grad = time_call(impl.element_gradients, mesh.triangles, gx, gy, u)
        ux, uy = impl.element_gradients(mesh.triangles, gx, gy, u)
        t_int = time_call(impl.gradient_pow_integral, areas, ux, uy, 3.0)
        rows.append((name, t_geom, t_stiff, t_grad, t_int))
    return mesh.n_triangles, rows


def bench_integrand():
    s = np.linspace(0.0, 0.499, 200_000)
    backends = available_backends()
    return [(name, time_call(impl.steiner_integrand, 1.0, 4.0, 4.0, 2.7, s))
            for name, impl in backends.items()]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="64,128,256,512",
                        help="structured-mesh subdivisions to benchmark")
    args = parser.parse_args()

    print(f"{'elements':>10} {'backend':>8} {'geometry':>10} {'stiffness':>10}"
          f" {'gradients':>10} {'integral':>10}")
    for n in (int(x) for x in args.sizes.split(",")):
        count, rows = bench_mesh(n)
        for name, *times in rows:
            cells = " ".join(f"{t * 1e3:9.3f}ms" for t in times)
            print(f"{count:>10} {name:>8} {cells}")
        if len(rows) == 2:
            speedups = [a / b for (_, *aa), (_, *bb) in [rows]
                        for a, b in zip(aa, bb)]
            print(f"{'':>10} {'ratio':>8} " +
                  " ".join(f"{s:9.2f}x " for s in speedups))

    print("\nweb-torsion integrand, 200k points:")
    for name, t in bench_integrand():
        print(f"  {name:>8} {t * 1e3:9.3f} ms")


if __name__ == "__main__":
    main()
