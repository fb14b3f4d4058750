#!/usr/bin/env python3
"""Regenerates tests/fixtures/*.json."""
import json
import os
import sys

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "tests", "fixtures")


def write(name, obj):
    with open(os.path.join(OUT, name), "w") as f:
        json.dump(obj, f, indent=1)
        f.write("\n")


def zeros(n):
    return [[0] * n for _ in range(n)]


def block_n(s):
    """[[0, S], [0, 0]] on (e1, e2, f1, f2)."""
    m = zeros(4)
    for i in range(2):
        for j in range(2):
            m[i][2 + j] = s[i][j]
    return m


S1 = [[1, 0], [0, 0]]
S2 = [[0, 0], [0, 1]]
S3 = [[1, 1], [1, 1]]
GENUS2_N = [block_n(S1), block_n(S2), block_n(S3)]
FORM_J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
FORM_METRIC = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]

genus2 = {"dim": 4, "weight": 1, "form": FORM_J, "symmetry": "alternating", "generators": GENUS2_N}


def c(z):
    return [z.real, z.imag]


def cmat(m):
    return [[c(complex(x)) for x in row] for row in m]


def genus2_flag(z0):
    cols = []
    for j in range(2):
        cols.append([z0[0][j], z0[1][j], 1 if j == 0 else 0, 1 if j == 1 else 0])
    cols += [[complex(x).conjugate() for x in col] for col in cols]
    basis = [[cols[k][r] for k in range(4)] for r in range(4)]
    return {"dims": [4, 2], "basis": cmat(basis)}


def kron(a, b):
    n, m = len(a), len(b)
    return [[a[i // m][j // m] * b[i % m][j % m] for j in range(n * m)] for i in range(n * m)]


def direct_sum(a, b):
    n, m = len(a), len(b)
    out = zeros(n + m)
    for i in range(n):
        for j in range(n):
            out[i][j] = a[i][j]
    for i in range(m):
        for j in range(m):
            out[n + i][n + j] = b[i][j]
    return out


def kvec(u, v):
    return [x * y for x in u for y in v]


def main():
    os.makedirs(OUT, exist_ok=True)
    write("genus2_cone.json", dict(genus2, **{
        "extra_charts": [{"name": "three-generator", "rows": [[1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]}],
        "membership": [{"I": [1], "a": [-1, -1, 1]}],
    }))
    write("k1_cone.json", {"dim": 2, "weight": 1, "form": [[0, 1], [-1, 0]], "generators": [[[0, 1], [0, 0]]]})
    write("equal_pair_cone.json", {"dim": 2, "weight": 1, "form": [[0, 1], [-1, 0]],
                                   "generators": [[[0, 1], [0, 0]], [[0, 1], [0, 0]]]})
    write("doubled_cone.json", {"dim": 2, "weight": 1, "form": [[0, 1], [-1, 0]],
                                "generators": [[[0, 1], [0, 0]], [[0, 2], [0, 0]]]})
    write("not_nilpotent_cone.json", {"dim": 2, "weight": 1, "form": [[0, 1], [-1, 0]],
                                      "generators": [[[1, 0], [0, -1]]]})
    big = [[[0] * 2 for _ in range(2)] for _ in range(13)]
    for g in big:
        g[0][1] = 1
    write("too_large_cone.json", {"dim": 2, "weight": 1, "form": [[0, 1], [-1, 0]], "generators": big})
    with open(os.path.join(OUT, "malformed.json"), "w") as f:
        f.write('{"dim": 4, "weight": 1, "form": [[0, 0, 1, 0],\n')

    # weight-1 genus-2 orbit twisted along N2, boundary stratum {1}
    z0 = [[1j, 0.05j], [0.05j, 1j]]
    orbit_cone = {"dim": 4, "weight": 1, "form": FORM_METRIC, "symmetry": "alternating", "generators": GENUS2_N}
    twisted = {"cone": orbit_cone, "flag": genus2_flag(z0),
               "twist": {"kind": "exp_linear", "generators": [cmat(GENUS2_N[1])]}}
    write("genus2_curvature.json", {"task": "curvature_limit", "orbit": twisted, "I": [1],
                                    "abs_t": [1e-2, 1e-3, 1e-4, 1e-5, 1e-6], "step": 1e-2})
    untwisted = {"cone": orbit_cone, "flag": genus2_flag(z0), "twist": {"kind": "none"}}
    write("genus2_curvature_untwisted.json", {"task": "curvature_limit", "orbit": untwisted, "I": [1],
                                              "w0": [], "direction": []})
    write("genus2_metric.json", {"task": "metric", "orbit": untwisted,
                                 "points": [{"t": [1e-3, 1e-3, 1e-3]}, {"t": [0.5, 0.2, 0.1]}]})

    # weight 2: (V1 ⊗ V2) ⊕ (V3 ⊗ V4), monodromy on the first summand only
    q0 = [[0, -1], [1, 0]]
    n0 = [[0, 1], [0, 0]]
    i2 = [[1, 0], [0, 1]]
    q = direct_sum(kron(q0, q0), kron(q0, q0))
    z4 = zeros(4)
    n1 = direct_sum(kron(n0, i2), z4)
    n2 = direct_sum(kron(i2, n0), z4)
    w = [1j, 1]
    wb = [-1j, 1]

    def emb(v, block):
        return v + [0] * 4 if block == 0 else [0] * 4 + v

    cols = [emb(kvec(w, w), 0), emb(kvec(w, w), 1),
            emb(kvec(w, wb), 0), emb(kvec(wb, w), 0), emb(kvec(w, wb), 1), emb(kvec(wb, w), 1),
            emb(kvec(wb, wb), 0), emb(kvec(wb, wb), 1)]
    basis = [[cols[k][r] for k in range(8)] for r in range(8)]
    w2 = {"cone": {"dim": 8, "weight": 2, "form": q, "symmetry": "symmetric", "generators": [n1, n2]},
          "flag": {"dims": [8, 6, 2], "basis": cmat(basis)}, "twist": {"kind": "none"}}
    write("weight2_expansion.json", {"task": "expansion_fit", "orbit": w2, "rays": [
        {"name": "hodge-tate", "alpha": [1, 1], "section": 0},
        {"name": "one-step", "alpha": [1, 0], "section": 0},
        {"name": "trivial-action", "alpha": [1, 1], "section": 1},
    ]})
    write("weight2_metric.json", {"task": "metric", "orbit": w2, "points": [{"t": [0.1, 0.1]}, {"t": [0.01, 0.3]}]})

    write("residue_g1.json", {"task": "residue", "g": [{"x": 0, "y": 0, "c": 1}], "abs_t": [1e-2, 1e-3, 1e-4, 1e-5]})
    write("residue_gx.json", {"task": "residue", "g": [{"x": 1, "y": 0, "c": 1}], "abs_t": [1e-2, 1e-3, 1e-4, 1e-5]})
    write("residue_g2.json", {"task": "residue", "g": [{"x": 0, "y": 0, "c": 2}], "abs_t": [1e-2, 1e-3, 1e-4, 1e-5]})

    # normal crossing degenerations; components and curves are numbered from 1
    plane = {"h": [1, 0, 1, 0, 1]}
    write("ncd_two_component.json", {"components": [plane, {"h": [1, 0, 2, 0, 1]}],
                                     "curves": [{"components": [1, 2], "genus": 0, "self_intersection": [1, -1]}]})
    tri = {"h": [1, 0, 2, 0, 1]}

    def triangle(selfs, point_curves):
        return {"components": [tri, tri, tri],
                "curves": [{"components": p, "genus": 0, "self_intersection": s}
                           for p, s in zip([[1, 2], [1, 3], [2, 3]], selfs)],
                "triple_points": [{"components": [1, 2, 3], "curves": point_curves}]}

    write("ncd_triangle.json", triangle([[-1, 0], [0, -1], [-1, 0]], [1, 2, 3]))
    write("ncd_triangle_bad.json", triangle([[0, 0], [0, -1], [-1, 0]], [1, 2, 3]))
    write("ncd_incidence_bad.json", triangle([[-1, 0], [0, -1], [-1, 0]], [1, 3, 2]))
    pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    idx = {p: i + 1 for i, p in enumerate(pairs)}
    points = []
    for t in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]:
        i, j, k = t
        points.append({"components": list(t), "curves": [idx[(i, j)], idx[(i, k)], idx[(j, k)]]})
    write("ncd_tetrahedron.json", {"components": [{"h": [1, 0, 3, 0, 1]}] * 4,
                                   "curves": [{"components": list(p), "genus": 0, "self_intersection": [-1, -1]}
                                              for p in pairs],
                                   "triple_points": points})
    write("dollar_curve.json", {"dual_graph": {"genus": [0, 0], "edges": [[1, 2], [1, 2], [1, 2]]}})
    write("disconnected_curve.json", {"dual_graph": {"genus": [1, 1], "edges": []}})

    # Sp(4) cones; both (p, q) labelings ship
    write("siegel_cl2.json", {"generators": [{"p": 1, "q": 0, "r": 0}, {"p": 0, "q": 1, "r": 0}],
                              "family": "y=(T,1)", "parabolic": "minimal"})
    write("siegel_cl2_swapped.json", {"generators": [{"p": 0, "q": 1, "r": 0}, {"p": 1, "q": 0, "r": 0}],
                                      "family": "y=(1,T)", "parabolic": "minimal"})
    write("siegel_cl3.json", {"generators": [{"p": 0, "q": 1, "r": 0}, {"p": 1, "q": 0, "r": 0}],
                              "family": "y=(T,1)", "parabolic": "maximal"})
    write("siegel_cl3_swapped.json", {"generators": [{"p": 1, "q": 0, "r": 0}, {"p": 0, "q": 1, "r": 0}],
                                      "family": "y=(1,T)", "parabolic": "maximal"})
    write("siegel_one_variable.json", {"generators": [{"p": 1, "q": 1, "r": 0}],
                                       "family": "y=(T)", "parabolic": "minimal"})
    write("siegel_mixed.json", {"generators": [{"p": 1, "q": 4, "r": 2}, {"p": 4, "q": 1, "r": -2}],
                                "family": "y=(2*T,3)", "parabolic": "maximal"})
    write("siegel_invalid.json", {"generators": [{"p": 1, "q": 1, "r": 0}, {"p": 0, "q": 1, "r": 0}]})

    # Appendix-B style linear algebra
    write("sigma1_nonsingular.json", {"Q": [[1, 0], [0, 1]]})
    write("sigma1_rank1.json", {"Q": [[1, 0], [0, 0]]})
    write("ndim_sigma1.json", {"sigma1_dim_w": 2})
    a = [[[1 if (u == a_ and al == 0) or (u == (a_ + 1) % 3 and al == 1) else 0 for u in range(3)]
          for a_ in range(2)] for al in range(2)]
    write("sigma2_injective.json", {"triple": {"dim_t": 2, "dim_w": 2, "dim_u": 3, "A": a},
                                    "Q": [[1, 0], [0, 1]]})
    return 0


if __name__ == "__main__":
    sys.exit(main())
