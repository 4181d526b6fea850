#!/usr/bin/env python3
"""Standalone Newton-Raphson power-flow reference.

Reads a MATPOWER case file and writes the converged bus voltage state as
JSON. Serves as an implementation-independent cross-check for the C++
solver's golden-file tests:

    python3 scripts/reference_pf.py data/case118.m tests/data/case118_pf_reference.json

Requires only numpy. Deliberately shares no code with the C++ tree.
"""
import json
import math
import re
import sys

import numpy as np


def parse_case(path):
    txt = open(path).read()

    def tab(name):
        m = re.search(r"mpc\.%s\s*=\s*\[(.*?)\];" % name, txt, re.S)
        if m is None:
            raise ValueError("missing table mpc.%s" % name)
        rows = []
        for ln in m.group(1).strip().splitlines():
            ln = ln.split("%")[0].strip().rstrip(";")
            if ln:
                rows.append([float(t) for t in ln.split()])
        return np.array(rows)

    base = float(re.search(r"mpc\.baseMVA\s*=\s*([\d.eE+-]+)", txt).group(1))
    return base, tab("bus"), tab("gen"), tab("branch")


def build_ybus(base, bus, branch):
    n = len(bus)
    id2i = {int(b[0]): i for i, b in enumerate(bus)}
    Y = np.zeros((n, n), complex)
    for r in branch:
        if r[10] == 0:
            continue
        f, t = id2i[int(r[0])], id2i[int(r[1])]
        ys = 1.0 / complex(r[2], r[3])
        bc = r[4]
        tap = r[8] if r[8] != 0 else 1.0
        shift = math.radians(r[9])
        T = tap * np.exp(1j * shift)
        Y[f, f] += (ys + 1j * bc / 2) / (tap * tap)
        Y[t, t] += ys + 1j * bc / 2
        Y[f, t] += -ys / np.conj(T)
        Y[t, f] += -ys / T
    for i, b in enumerate(bus):
        Y[i, i] += complex(b[4], b[5]) / base
    return Y, id2i


def solve(base, bus, gen, branch, tol=1e-12, maxit=40):
    n = len(bus)
    Y, id2i = build_ybus(base, bus, branch)
    types = bus[:, 1].astype(int)
    slack = int(np.where(types == 3)[0][0])

    Pg = np.zeros(n)
    Qg = np.zeros(n)
    vset = {}
    for g in gen:
        if g[7] == 0:
            continue
        i = id2i[int(g[0])]
        Pg[i] += g[1] / base
        Qg[i] += g[2] / base
        vset.setdefault(i, g[5])
    Psp = Pg - bus[:, 2] / base
    Qsp = Qg - bus[:, 3] / base

    pv = sorted(set(vset) - {slack})
    pq = [i for i in range(n) if i != slack and i not in vset]
    pvpq = pv + pq

    v = np.ones(n)
    th = np.full(n, math.radians(bus[slack, 8]))
    v[slack] = vset[slack]
    for i in pv:
        v[i] = vset[i]

    for it in range(maxit):
        V = v * np.exp(1j * th)
        I = Y @ V
        S = V * np.conj(I)
        mis = np.concatenate([(Psp - S.real)[pvpq], (Qsp - S.imag)[pq]])
        if len(mis) == 0 or np.abs(mis).max() < tol:
            return v, th, it, float(np.abs(mis).max()) if len(mis) else 0.0
        dS_dth = np.zeros((n, n), complex)
        dS_dv = np.zeros((n, n), complex)
        for i in range(n):
            for j in range(n):
                if i == j:
                    dS_dth[i, i] = 1j * V[i] * (np.conj(I[i]) - np.conj(Y[i, i] * V[i]))
                    dS_dv[i, i] = V[i] / v[i] * np.conj(I[i]) + V[i] * np.conj(Y[i, i] * V[i] / v[i])
                elif Y[i, j] != 0:
                    dS_dth[i, j] = -1j * V[i] * np.conj(Y[i, j] * V[j])
                    dS_dv[i, j] = V[i] * np.conj(Y[i, j] * V[j] / v[j])
        J = np.block([
            [dS_dth[np.ix_(pvpq, pvpq)].real, dS_dv[np.ix_(pvpq, pq)].real],
            [dS_dth[np.ix_(pq, pvpq)].imag, dS_dv[np.ix_(pq, pq)].imag],
        ])
        dx = np.linalg.solve(J, mis)
        th[pvpq] += dx[: len(pvpq)]
        v[pq] += dx[len(pvpq):]
    raise RuntimeError("power flow did not converge")


def main():
    case = sys.argv[1] if len(sys.argv) > 1 else "data/case118.m"
    out = sys.argv[2] if len(sys.argv) > 2 else None
    base, bus, gen, branch = parse_case(case)
    v, th, iters, mis = solve(base, bus, gen, branch)
    doc = {
        "case": case.split("/")[-1],
        "iterations": iters,
        "max_mismatch": mis,
        "bus_id": bus[:, 0].astype(int).tolist(),
        "v_mag": [repr(x) for x in v],
        "v_ang": [repr(x) for x in th],
    }
    text = json.dumps(doc, indent=1)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
        print("wrote %s (%d iterations, mismatch %.3g)" % (out, iters, mis))
    else:
        print(text)


if __name__ == "__main__":
    main()
