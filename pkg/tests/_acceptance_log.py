"""Collects one line per acceptance criterion for the terminal summary."""
LINES = {}


def record(number, title, checks):
    """checks: iterable of (label, measured, bound, passed[, op]). Returns overall pass."""
    checks = [tuple(c) + ("<=",) * (5 - len(c)) for c in checks]
    ok = all(c[3] for c in checks)
    detail = "; ".join(f"{lab}={val:.3g} ({op} {tol:.3g}{'' if passed else ' VIOLATED'})"
                       if isinstance(val, float) else f"{lab}={val}"
                       for lab, val, tol, passed, op in checks)
    LINES[number] = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  [{detail}]"
    print(LINES[number])
    return ok
