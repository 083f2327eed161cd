"""Reads a fixed-format MPS file and solves it with scipy's HiGHS MILP.

Usage: mps_solve.py FILE [time_limit]
Prints `rows cols binaries nonzeros` and, if solved, `objective VALUE`.
"""
import sys

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import coo_matrix


def read_mps(path):
    rows, row_index, obj_name = [], {}, None
    cols, col_index, entries, rhs = [], {}, [], {}
    lower, upper, integer = {}, {}, set()
    section, in_int = None, False
    with open(path) as fh:
        for raw in fh:
            if not raw.strip() or raw.startswith("*"):
                continue
            if not raw[0].isspace():
                section = raw.split()[0]
                continue
            tok = raw.split()
            if section == "ROWS":
                kind, name = tok
                if kind == "N":
                    obj_name = name
                else:
                    row_index[name] = len(rows)
                    rows.append((name, kind))
            elif section == "COLUMNS":
                if len(tok) >= 3 and tok[1] == "'MARKER'":
                    in_int = tok[2] == "'INTORG'"
                    continue
                col = tok[0]
                if col not in col_index:
                    col_index[col] = len(cols)
                    cols.append(col)
                    if in_int:
                        integer.add(col)
                for name, value in zip(tok[1::2], tok[2::2]):
                    entries.append((name, col, float(value)))
            elif section == "RHS":
                for name, value in zip(tok[1::2], tok[2::2]):
                    rhs[name] = float(value)
            elif section == "BOUNDS":
                kind, col = tok[0], tok[2]
                value = float(tok[3]) if len(tok) > 3 else 0.0
                if kind in ("UP", "FX"):
                    upper[col] = value
                if kind in ("LO", "FX"):
                    lower[col] = value
                if kind == "MI":
                    lower[col] = -np.inf
                if kind == "BV":
                    lower[col], upper[col] = 0.0, 1.0
                    integer.add(col)
    return rows, row_index, obj_name, cols, col_index, entries, rhs, lower, upper, integer


def main():
    path = sys.argv[1]
    limit = float(sys.argv[2]) if len(sys.argv) > 2 else 600.0
    rows, row_index, obj_name, cols, col_index, entries, rhs, lower, upper, integer = read_mps(path)
    m, n = len(rows), len(cols)
    c = np.zeros(n)
    r, k, v = [], [], []
    for name, col, value in entries:
        if name == obj_name:
            c[col_index[col]] += value
        elif value != 0.0:
            r.append(row_index[name])
            k.append(col_index[col])
            v.append(value)
    print(m, n, len(integer), len(v))
    lo = np.full(m, -np.inf)
    hi = np.full(m, np.inf)
    for i, (name, kind) in enumerate(rows):
        b = rhs.get(name, 0.0)
        if kind in ("L", "E"):
            hi[i] = b
        if kind in ("G", "E"):
            lo[i] = b
    A = coo_matrix((v, (r, k)), shape=(m, n)).tocsr()
    lb = np.array([lower.get(name, 0.0) for name in cols])
    ub = np.array([upper.get(name, np.inf) for name in cols])
    integrality = np.array([1 if name in integer else 0 for name in cols])
    res = milp(c, constraints=LinearConstraint(A, lo, hi), bounds=Bounds(lb, ub),
               integrality=integrality,
               options={"time_limit": limit, "mip_rel_gap": 1e-9, "disp": False})
    if res.x is not None:
        print("objective %.12g" % res.fun)
    print("status", res.status, res.message)


if __name__ == "__main__":
    main()
