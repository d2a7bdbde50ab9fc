#!/usr/bin/env python3
# Copyright 2026 The qtrojan Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Synthesizes the reversible benchmark corpus under fixtures/bench.

Each circuit is a random X/CX/CCX/MCX/SWAP netlist drawn until it matches a
RevLib benchmark's shape (qubit count, gate count, ASAP depth).  One qubit is
left idle so it can host the Trojan control line.  Every candidate is checked
against *all* branches of the random-target insertion procedure:

  * every branch places exactly `gate_limit` payload CX gates;
  * the default control rule selects the idle qubit;
  * a branch whose payload target reaches a measured qubit changes the
    (deterministic) output when the switch is on;
  * multi-bit circuits with >= 3 payloads change the output on every branch.

The script is deterministic (fixed seed) and only needs the standard library.
Run it from the repository root:  python3 fixtures/generate_fixtures.py
"""

import json
import os
import random

# name, qubits, gates, depth, payloads, measured outputs
SHAPES = [
    ("mini_ALU", 10, 7, 7, 1, 2),
    ("4mod5", 5, 7, 6, 3, 1),
    ("1bit_adder", 4, 5, 5, 1, 1),
    ("4gt11", 5, 13, 13, 1, 1),
    ("4gt13", 5, 4, 4, 1, 1),
    ("rd53", 7, 16, 16, 5, 3),
    ("rd73", 10, 20, 13, 4, 3),
    ("rd84", 12, 28, 15, 5, 4),
    ("ALU", 5, 7, 7, 1, 1),
    ("sym6", 7, 22, 13, 4, 1),
    ("hwb4", 4, 25, 21, 1, 3),
    ("decod24", 6, 20, 14, 1, 4),
    ("ham7", 7, 23, 19, 1, 6),
]


def layerize(gates, n):
    last = [-1] * n
    layer_of = []
    for _, ops in gates:
        l = 1 + max(last[q] for q in ops)
        for q in ops:
            last[q] = l
        layer_of.append(l)
    depth = 1 + max(layer_of) if layer_of else 0
    used = [set() for _ in range(depth)]
    for (_, ops), l in zip(gates, layer_of):
        used[l].update(ops)
    empty = [sorted(set(range(n)) - u) for u in used]
    return layer_of, depth, empty


def apply(gates, n, state=0):
    for kind, ops in gates:
        bit = lambda q: (state >> q) & 1
        if kind == "swap":
            a, b = ops
            if bit(a) != bit(b):
                state ^= (1 << a) | (1 << b)
        else:
            if all(bit(c) for c in ops[:-1]):
                state ^= 1 << ops[-1]
    return state


def outcome(state, measured):
    return tuple((state >> q) & 1 for q in measured)


def branches(empty, depth, control, limit, n):
    """All (layer, target) placement sequences the insertion can produce."""
    results = []

    def rec(layer, avail, placed):
        if len(placed) == limit or layer >= depth:
            results.append(list(placed))
            return
        if control not in empty[layer]:
            rec(layer + 1, avail, placed)
            return
        cand = sorted(avail & set(empty[layer]))
        if not cand:
            rec(layer + 1, avail, placed)
            return
        for t in cand:
            placed.append((layer, t))
            rec(layer + 1, avail - {t}, placed)
            placed.pop()

    rec(1, set(range(n)) - {control}, [])
    return results


def insert(gates, layer_of, control, placements, activated):
    """Mirror of the library's placement rule: a Trojan gate goes right after
    the last original gate on its operands that sits in an earlier layer."""
    slots = {}
    if activated:
        slots.setdefault(-1, []).append(("x", (control,)))
    for layer, t in placements:
        pos = -1
        for i, (_, ops) in enumerate(gates):
            if layer_of[i] < layer and (control in ops or t in ops):
                pos = i
        slots.setdefault(pos, []).append(("cx", (control, t)))
    out = list(slots.get(-1, []))
    for i, g in enumerate(gates):
        out.append(g)
        for tg in slots.get(i, []):
            out.append(tg)
    return out


def forward_cone(gates, start, qubit):
    cone = {qubit}
    for _, ops in gates[start:]:
        if cone & set(ops):
            cone |= set(ops)
    return cone


def default_control(gates, layer_of, depth, empty, n, limit):
    first_use = [depth] * n
    for (_, ops), l in zip(gates, layer_of):
        for q in ops:
            first_use[q] = min(first_use[q], l)
    # The check must hold on every branch for the rule to be seed-independent.
    for cand in empty[0]:
        bs = branches(empty, depth, cand, limit, n)
        ok = [bool(b) and all(l < first_use[cand] for l, _ in b) for b in bs]
        if all(ok):
            return cand
        if any(ok):
            return None  # seed-dependent choice, reject the candidate circuit
    return None


def random_circuit(rng, n, g, control, chain):
    work = [q for q in range(n) if q != control]
    gates = []
    n_inputs = rng.randint(1, max(1, min(3, g // 3)))
    inputs = rng.sample(work, min(n_inputs, len(work)))
    for q in inputs:
        gates.append(("x", (q,)))
    while len(gates) < g:
        r = rng.random()
        if r < 0.12:
            k = 1
        elif r < 0.5:
            k = 2
        elif r < 0.88 or len(work) < 4:
            k = 3
        else:
            k = 4
        k = min(k, len(work))
        if gates and rng.random() < chain:
            anchor = rng.choice(gates[-1][1])
            rest = rng.sample([q for q in work if q != anchor], k - 1)
            ops = [anchor] + rest
            rng.shuffle(ops)
        else:
            ops = rng.sample(work, k)
        if k == 1:
            gates.append(("x", tuple(ops)))
        elif k == 2:
            gates.append(("swap" if rng.random() < 0.08 else "cx", tuple(ops)))
        elif k == 3:
            gates.append(("ccx", tuple(ops)))
        else:
            gates.append(("mcx", tuple(ops)))
    return gates


def check(gates, n, control, limit, measured, multi_strict):
    layer_of, depth, empty = layerize(gates, n)
    if depth == 0 or control not in empty[0]:
        return None
    if default_control(gates, layer_of, depth, empty, n, limit) != control:
        return None
    base = outcome(apply(gates, n), measured)
    bs = branches(empty, depth, control, limit, n)
    for b in bs:
        if len(b) != limit:
            return None
        ins = insert(gates, layer_of, control, b, activated=True)
        out = outcome(apply(ins, n), measured)
        deact = insert(gates, layer_of, control, b, activated=False)
        if outcome(apply(deact, n), measured) != base:
            return None
        reaches = False
        # payload gates are exactly the CX gates whose first operand is the
        # idle control line
        for idx, (kind, ops) in enumerate(ins):
            if kind == "cx" and ops[0] == control:
                if forward_cone(ins, idx + 1, ops[1]) & set(measured):
                    reaches = True
        if reaches and out == base:
            return None
        if multi_strict and out == base:
            return None
    return base, depth, len(bs)


def qasm(name, gates, n, measured, expected, limit):
    lines = [
        f"// {name}: synthesized reversible benchmark (see fixtures/README.md)",
        f"// expected: {expected}",
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{n}];",
        f"creg c[{len(measured)}];",
    ]
    for kind, ops in gates:
        lines.append(f"{kind} " + ",".join(f"q[{q}]" for q in ops) + ";")
    for bit, q in enumerate(measured):
        lines.append(f"measure q[{q}] -> c[{bit}];")
    return "\n".join(lines) + "\n"


def main():
    root = os.path.dirname(os.path.abspath(__file__))
    out_dir = os.path.join(root, "bench")
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(20250117)
    manifest = {"circuits": []}
    for name, n, g, d, limit, n_out in SHAPES:
        found = None
        for attempt in range(400000):
            control = rng.randrange(n)
            chain = min(1.0, max(0.0, (d - 1) / max(1, g - 1)))
            chain = chain if d < g else 1.0
            gates = random_circuit(rng, n, g, control, chain)
            _, depth, _ = layerize(gates, n)
            if depth != d:
                continue
            work = [q for q in range(n) if q != control]
            touched = sorted({q for _, ops in gates for q in ops})
            if len(touched) != len(work):
                continue
            measured = sorted(rng.sample(work, n_out))
            res = check(gates, n, control, limit, measured, n_out >= 2 and limit >= 3)
            if res is None:
                continue
            found = (gates, control, measured, res)
            break
        if found is None:
            raise SystemExit(f"no circuit found for {name}")
        gates, control, measured, (base, depth, nb) = found
        # classical bit 0 is the rightmost character
        expected = "".join(str(b) for b in reversed(base))
        with open(os.path.join(out_dir, f"{name}.qasm"), "w") as fh:
            fh.write(qasm(name, gates, n, measured, expected, limit))
        manifest["circuits"].append({
            "file": f"{name}.qasm",
            "gate_limit": limit,
            "expected": expected,
            "control_pos": control,
        })
        print(f"{name:12s} n={n:2d} gates={g:2d} depth={depth:2d} "
              f"payloads={limit} control=q{control} measured={measured} "
              f"expected={expected} branches={nb}")
    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


if __name__ == "__main__":
    main()
