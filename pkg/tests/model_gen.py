"""Seeded generator of small valid architecture descriptions (text form).

Models are valid by construction: operators only reference already-declared
publishers (acyclic), disjunct producers share one value type, controllers
react to contexts only and whitelist methods of a single interface.
"""

from __future__ import annotations

import random

_TYPES = ("Bool", "Int", "Pressure")  # Pressure exercises opaque types


def random_model_text(seed: int, max_elements: int = 10) -> str:
    rng = random.Random(seed)
    blocks: list[str] = []
    publishers: list[tuple[str, str]] = []  # (canonical ref, type spelling)
    elements = 0

    n_devices = rng.randint(1, 2)
    for d in range(n_devices):
        dev = f"Dev{d}"
        sources = []
        for s in range(rng.randint(1, 2)):
            stype = rng.choice(_TYPES)
            sources.append(f"  source s{s} as {stype};")
            publishers.append((f"{dev}.s{s}", stype))
        blocks.append(f"device {dev} {{\n" + "\n".join(sources) + "\n}")
        elements += 1

    interfaces: list[tuple[str, list[str]]] = []
    if rng.random() < 0.8 and elements + 2 <= max_elements:
        methods = []
        for m in range(rng.randint(1, 3)):
            params = ", ".join(f"p{i} as {rng.choice(_TYPES)}"
                               for i in range(rng.randint(0, 2)))
            methods.append(f"  method m{m}({params});")
        blocks.append("actioninterface Iface0 {\n" + "\n".join(methods) + "\n}")
        blocks.append("device Holder {\n  provides Iface0;\n}")
        interfaces.append(("Iface0", [f"m{m}" for m in range(len(methods))]))
        elements += 2

    contexts: list[tuple[str, str]] = []
    n_contexts = rng.randint(1, min(4, max_elements - elements))
    for c in range(n_contexts):
        name = f"Ctx{c}"
        out_type = rng.choice(_TYPES)
        activation_type = rng.choice(sorted({t for _, t in publishers}))
        candidates = [p for p, t in publishers if t == activation_type]
        picked = rng.sample(candidates, k=min(len(candidates), rng.randint(1, 2)))
        lines = [f"context {name} as {out_type} {{",
                 "  when " + " or ".join(f"provided {p}" for p in picked)]
        pool = [p for p, _ in publishers if p != name]
        for target in rng.sample(pool, k=min(len(pool), rng.randint(0, 2))):
            ttype = dict(publishers)[target]
            suffix = f" as {ttype}" if rng.random() < 0.3 else ""
            lines.append(f"  get {target}{suffix}")
        lines.append(f"  {rng.choice(('always', 'maybe'))} publish")
        lines.append("}")
        blocks.append("\n".join(lines))
        publishers.append((name, out_type))
        contexts.append((name, out_type))
        elements += 1

    if interfaces and contexts:
        for k in range(rng.randint(0, min(2, max_elements - elements))):
            activation_type = rng.choice(sorted({t for _, t in contexts}))
            candidates = [n for n, t in contexts if t == activation_type]
            picked = rng.sample(candidates, k=min(len(candidates), rng.randint(1, 2)))
            iface, methods = interfaces[0]
            chosen = rng.sample(methods, k=rng.randint(1, len(methods)))
            lines = [f"controller Ctl{k} {{",
                     "  when " + " or ".join(f"provided {p}" for p in picked)]
            lines += [f"  do {m} on {iface}" for m in sorted(chosen)]
            lines.append("}")
            blocks.append("\n".join(lines))
            elements += 1

    return "\n\n".join(blocks) + "\n"
