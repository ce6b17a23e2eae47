"""Line-oriented instance files.

::

    gscsp 1
    vars 3 A B C                      # names are optional
    domain 0 1 5 9
    domain 1 2 6 8
    domain 2 3 4 10
    constraint 0 1 diff -3 1          # -3 <= X0 - X1 <= 1
    constraint 1 2 intervals
      row 2 3 4                       # value of X1, then lo and hi values of X2
    end

Omitted rows have an empty image. ``serialize`` always writes ``intervals``
blocks, so its output parses back to an equal instance and re-serializes to
the same text.
"""

from __future__ import annotations

from .core import CspInstance, Domain, RowConvexConstraint, SupportInterval, difference_constraint
from .errors import DuplicateConstraint, InstanceSyntaxError, UnknownValue

MAGIC = ("gscsp", "1")


def _int(tok: str, line: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise InstanceSyntaxError(line, f"{what} must be an integer, got {tok!r}") from None


def _tokens(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield no, body


def parse(text: str) -> CspInstance:
    lines = list(_tokens(text))
    if not lines or tuple(lines[0][1]) != MAGIC:
        raise InstanceSyntaxError(lines[0][0] if lines else 1, "expected header 'gscsp 1'")
    pos = 1
    if pos >= len(lines) or lines[pos][1][0] != "vars":
        raise InstanceSyntaxError(lines[pos][0] if pos < len(lines) else lines[-1][0], "expected 'vars <n>'")
    no, toks = lines[pos]
    if len(toks) < 2:
        raise InstanceSyntaxError(no, "expected 'vars <n>'")
    n = _int(toks[1], no, "variable count")
    if n < 0:
        raise InstanceSyntaxError(no, "variable count must be non-negative")
    names = toks[2:]
    if names and len(names) != n:
        raise InstanceSyntaxError(no, f"{len(names)} names given for {n} variables")
    if len(set(names)) != len(names):
        raise InstanceSyntaxError(no, "variable names must be distinct")
    pos += 1

    domains: list[Domain | None] = [None] * n
    cons: list[RowConvexConstraint] = []
    seen: dict[frozenset, int] = {}

    def var(tok: str, line: int) -> int:
        if tok in names:
            return names.index(tok)
        v = _int(tok, line, "variable id")
        if not 0 <= v < n:
            raise InstanceSyntaxError(line, f"variable {v} out of range 0..{n - 1}")
        return v

    def domain_of(v: int, line: int) -> Domain:
        dom = domains[v]
        if dom is None:
            raise InstanceSyntaxError(line, f"variable {v} has no domain yet")
        return dom

    while pos < len(lines):
        no, toks = lines[pos]
        pos += 1
        head = toks[0]
        if head == "domain":
            if len(toks) < 3:
                raise InstanceSyntaxError(no, "a domain needs at least one value")
            v = var(toks[1], no)
            if domains[v] is not None:
                raise InstanceSyntaxError(no, f"domain of variable {v} given twice")
            values = [_int(t, no, "domain value") for t in toks[2:]]
            try:
                domains[v] = Domain(values)
            except ValueError as exc:
                raise InstanceSyntaxError(no, str(exc)) from None
        elif head == "constraint":
            if len(toks) < 4:
                raise InstanceSyntaxError(no, "expected 'constraint <i> <j> intervals|diff ...'")
            i, j = var(toks[1], no), var(toks[2], no)
            if i == j:
                raise InstanceSyntaxError(no, f"constraint relates variable {i} to itself")
            key = frozenset((i, j))
            if key in seen:
                raise DuplicateConstraint((min(i, j), max(i, j)), no)
            seen[key] = no
            di, dj = domain_of(i, no), domain_of(j, no)
            form = toks[3]
            if form == "diff":
                if len(toks) != 6:
                    raise InstanceSyntaxError(no, "expected 'constraint <i> <j> diff <lo> <hi>'")
                lo, hi = _int(toks[4], no, "lower bound"), _int(toks[5], no, "upper bound")
                cons.append(difference_constraint(i, j, di, dj, lo, hi))
            elif form == "intervals":
                if len(toks) != 4:
                    raise InstanceSyntaxError(no, "unexpected tokens after 'intervals'")
                rows: list[SupportInterval | None] = [None] * len(di)
                closed = False
                while pos < len(lines):
                    rno, rtoks = lines[pos]
                    pos += 1
                    if rtoks == ["end"]:
                        closed = True
                        break
                    if rtoks[0] != "row" or len(rtoks) != 4:
                        raise InstanceSyntaxError(rno, "expected 'row <value> <lo> <hi>' or 'end'")
                    rv, lv, hv = (_int(t, rno, "row value") for t in rtoks[1:])
                    try:
                        r, a, b = di.index(rv), dj.index(lv), dj.index(hv)
                    except KeyError as exc:
                        raise UnknownValue(rno, f"value {exc.args[0]} is not in the domain") from None
                    if a > b:
                        raise InstanceSyntaxError(rno, "row interval has lo > hi")
                    if rows[r] is not None:
                        raise InstanceSyntaxError(rno, f"row {rv} given twice")
                    rows[r] = SupportInterval(a, b)
                if not closed:
                    raise InstanceSyntaxError(no, "intervals block is missing 'end'")
                cons.append(RowConvexConstraint(i, j, di, dj, tuple(rows)))
            else:
                raise InstanceSyntaxError(no, f"unknown constraint form {form!r}")
        else:
            raise InstanceSyntaxError(no, f"unexpected {head!r}")

    missing = [v for v, d in enumerate(domains) if d is None]
    if missing:
        raise InstanceSyntaxError(lines[-1][0], f"no domain for variable {missing[0]}")
    return CspInstance(domains, cons, names or None)


def _default_names(instance: CspInstance) -> bool:
    return instance.names == tuple(f"X{i}" for i in range(instance.n))


def serialize(instance: CspInstance) -> str:
    out = ["gscsp 1"]
    if _default_names(instance):
        out.append(f"vars {instance.n}")
    else:
        out.append(" ".join(["vars", str(instance.n), *instance.names]))
    for v, dom in enumerate(instance.domains):
        out.append(" ".join(["domain", str(v), *map(str, dom.values)]))
    for c in instance.constraints:
        out.append(serialize_constraint(c))
    return "\n".join(out) + "\n"


def serialize_constraint(c: RowConvexConstraint) -> str:
    """One ``intervals`` block, without a trailing newline."""
    out = [f"constraint {c.row_var} {c.col_var} intervals"]
    for r, iv in enumerate(c.rows):
        if iv is not None:
            out.append(f"  row {c.row_domain[r]} {c.col_domain[iv.lo]} {c.col_domain[iv.hi]}")
    out.append("end")
    return "\n".join(out)


def load(path: str) -> CspInstance:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(instance: CspInstance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(instance))
