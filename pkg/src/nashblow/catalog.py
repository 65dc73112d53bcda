"""Builders for the worked example inputs, as session dictionaries.

Each builder returns a JSON-ready dict in the session file format; the files
shipped in ``data/`` are generated from these.
"""

from __future__ import annotations

from typing import Dict, List


def _sparse(table: Dict[tuple, List[str]]):
    return [[a, b, coeffs] for (a, b), coeffs in sorted(table.items())]


def _commutator_table(n: int):
    """Commutator on gl_n in the row-major basis E_ij (1-based indices), a < b."""
    dim = n * n

    def idx(i, j):
        return i * n + j

    out = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    a, b = idx(i, j) + 1, idx(k, l) + 1
                    if a >= b:
                        continue
                    c = [0] * dim
                    if j == k:
                        c[idx(i, l)] += 1
                    if l == i:
                        c[idx(k, j)] -= 1
                    if any(c):
                        out[(a, b)] = [str(x) for x in c]
    return out


def gl2() -> dict:
    xs = ["x1", "x2", "x3", "x4"]  # row-major entries of a 2x2 matrix
    X = [["x1", "x2"], ["x3", "x4"]]

    def ad_column(p, q):
        # vec([x, E_pq]) = vec(x E_pq - E_pq x)
        out = []
        for r in range(2):
            for s in range(2):
                terms = []
                if s == q:
                    terms.append(X[r][p])
                if r == p:
                    terms.append("-" + X[q][s])
                out.append(" + ".join(terms) if terms else "0")
        return out

    cols = [ad_column(p, q) for p in range(2) for q in range(2)]
    anchor = [[cols[c][r] for c in range(4)] for r in range(4)]
    d2 = [["1", "x1"], ["0", "x2"], ["0", "x3"], ["1", "x4"]]
    sections = {f"X{p + 1}{q + 1}": ["1" if k == 2 * p + q else "0" for k in range(4)] for p in range(2) for q in range(2)}
    return {
        "name": "gl2",
        "provenance": "adjoint action of gl2 on itself",
        "variables": xs,
        "resolution": {"anchor": anchor, "differentials": [d2]},
        "almost_lie": {"brackets": {"1,1": _sparse(_commutator_table(2))}, "sections": sections},
        "vector_fields": {name: [anchor[r][k] for r in range(4)] for k, name in enumerate(sections)},
        "points": {"origin": ["0", "0", "0", "0"], "regular": ["1", "2", "3", "4"], "scalar": ["2", "0", "0", "2"]},
        "curves": {"diag": ["0", "0", "0", "t"], "nilpotent": ["0", "t", "0", "0"], "mixed": ["t", "t^2", "2*t", "-t"]},
        "ideals": {"scalars": ["x2", "x3", "x1 - x4"]},
        "matrices": {"d2": d2},
        "fiber_variables": {},
    }


def euler(n: int) -> dict:
    xs = [f"x{i + 1}" for i in range(n)]
    return {
        "name": f"euler{n}",
        "provenance": f"Euler vector field on A^{n}",
        "variables": xs,
        "resolution": {"anchor": [[x] for x in xs], "differentials": []},
        "almost_lie": {"brackets": {}, "sections": {"E": ["1"]}},
        "vector_fields": {"E": xs, "D1": ["1"] + ["0"] * (n - 1)},
        "points": {"origin": ["0"] * n, "regular": [str(i + 1) for i in range(n)]},
        "curves": {"line": ["t"] + [f"{i + 1}*t" for i in range(1, n)]},
        "ideals": {"maximal": xs},
        "matrices": {"anchor": [[x] for x in xs]},
        "fiber_variables": {},
    }


def _vanishing_brackets():
    """Brackets of x_i d_j frames and of the relation frames (N = 2)."""
    # level (1,2): l2(E_ij, f_m) = delta_ij f_m - delta_mi f_j
    t12 = {}
    for i in range(2):
        for j in range(2):
            for m in range(2):
                c = [0, 0]
                if i == j:
                    c[m] += 1
                if m == i:
                    c[j] -= 1
                if any(c):
                    t12[(2 * i + j + 1, m + 1)] = [str(x) for x in c]
    return {"1,1": _sparse(_commutator_table(2)), "1,2": _sparse(t12)}


def vanishing2() -> dict:
    anchor = [["x1", "0", "x2", "0"], ["0", "x1", "0", "x2"]]
    d2 = [["x2", "0"], ["0", "x2"], ["-x1", "0"], ["0", "-x1"]]
    return {
        "name": "vanishing2",
        "provenance": "vector fields on A^2 vanishing at the origin, frame E_ij -> x_i d_j",
        "variables": ["x1", "x2"],
        "resolution": {"anchor": anchor, "differentials": [d2]},
        "almost_lie": {
            "brackets": _vanishing_brackets(),
            "sections": {"Eu": ["1", "0", "0", "1"], "R": ["0", "-1", "1", "0"], "Q": ["0", "x1", "0", "0"]},
        },
        "vector_fields": {"Eu": ["x1", "x2"], "R": ["x2", "-x1"], "Q": ["0", "x1^2"], "D1": ["1", "0"]},
        "points": {"origin": ["0", "0"], "regular": ["1", "3"]},
        "curves": {"diag": ["t", "t"], "axis": ["t", "0"], "slope2": ["t", "2*t"], "cusp": ["t^2", "t^3"]},
        "ideals": {"maximal": ["x1", "x2"], "square": ["x1^2", "x1*x2", "x2^2"]},
        "matrices": {"anchor": anchor},
        "fiber_variables": {},
    }


def koszul() -> dict:
    anchor = [["x", "0", "y", "0"], ["0", "x", "0", "y"]]
    d2 = [["-y", "0"], ["0", "-y"], ["x", "0"], ["0", "x"]]
    return {
        "name": "koszul",
        "provenance": "Koszul complex of (x, y) tensored with vector fields on A^2",
        "variables": ["x", "y"],
        "resolution": {"anchor": anchor, "differentials": [d2]},
        "almost_lie": {
            "brackets": _vanishing_brackets(),
            "sections": {"Eu": ["1", "0", "0", "1"], "Q": ["0", "x", "0", "0"]},
        },
        "vector_fields": {"Eu": ["x", "y"], "Q": ["0", "x^2"]},
        "points": {"origin": ["0", "0"], "regular": ["2", "-1"]},
        "curves": {"diag": ["t", "t"], "axis": ["0", "t"]},
        "ideals": {"maximal": ["x", "y"]},
        "matrices": {"anchor": anchor},
        "fiber_variables": {},
    }


def so3() -> dict:
    anchor = [["0", "-z", "y"], ["z", "0", "-x"], ["-y", "x", "0"]]
    cyc = {(1, 2): ["0", "0", "1"], (2, 3): ["1", "0", "0"], (1, 3): ["0", "-1", "0"]}
    P = [["0", "z", "-y"], ["-z", "0", "x"], ["y", "-x", "0"]]
    return {
        "name": "so3",
        "provenance": "linear Poisson structure on the dual of so(3)",
        "variables": ["x", "y", "z"],
        "resolution": {"anchor": anchor, "differentials": [[["x"], ["y"], ["z"]]]},
        "almost_lie": {
            "brackets": {"1,1": _sparse(cyc)},
            "sections": {"H1": ["1", "0", "0"], "H2": ["0", "1", "0"], "H3": ["0", "0", "1"]},
        },
        "vector_fields": {"H1": ["0", "z", "-y"], "H2": ["-z", "0", "x"], "H3": ["y", "-x", "0"]},
        "bivectors": {"P": P},
        "points": {"origin": ["0", "0", "0"], "regular": ["1", "2", "2"]},
        "curves": {"axis": ["t", "0", "0"], "line": ["t", "2*t", "-t"]},
        "ideals": {"maximal": ["x", "y", "z"]},
        "matrices": {"anchor": anchor},
        "fiber_variables": {"1": ["w", "u", "v"]},
    }


def along_phi(power: int) -> dict:
    phi = f"x^{power} + y^{power}"
    gx, gy = f"{power}*x^{power - 1}", f"{power}*y^{power - 1}"
    if power == 2:
        gx, gy = "2*x", "2*y"
    anchor = [[f"-{gy}"], [gx]]
    return {
        "name": f"along_phi{power}",
        "provenance": f"vector fields tangent to the level sets of phi = {phi}",
        "variables": ["x", "y"],
        "resolution": {"anchor": anchor, "differentials": []},
        "almost_lie": {"brackets": {}, "sections": {"H": ["1"]}},
        "vector_fields": {"H": [f"-{gy}", gx]},
        "points": {"origin": ["0", "0"], "regular": ["1", "1"]},
        "curves": {"diag": ["t", "t"], "axis": ["t", "0"]},
        "ideals": {"maximal": ["x", "y"], "squares": ["x^2", "y^2"]},
        "matrices": {"anchor": anchor},
        "fiber_variables": {},
    }


ALL = {
    "gl2": gl2,
    "euler2": lambda: euler(2),
    "euler3": lambda: euler(3),
    "vanishing2": vanishing2,
    "koszul": koszul,
    "so3": so3,
    "along_phi2": lambda: along_phi(2),
    "along_phi3": lambda: along_phi(3),
}
