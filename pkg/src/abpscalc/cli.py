"""Command-line front end: parameter expressions, table rendering, and
golden fixtures.

Markdown output uses a plain ASCII transliteration of the usual
notation: bipartitions print as ``(alpha,beta)`` with dots between
parts, two-row symbols as ``(top|bottom)``, and sign characters as
``[generator->sign ...]``.
"""

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from .combicore import BCSymbol, sign_twist, symbol_of_bipartition
from .extquot import ONE, MINUS_ONE, free, hyperoctahedral_action, q_power, spectral_eq, strata
from .langlands import (
    DEFAULT_CATALOGUE,
    FormalParameter,
    PadicGroup,
    UnknownCharacter,
    WFLine,
    component_groups,
    centralizer_display,
    centralizer_restriction,
    connected_centralizer,
    cuspidal_support,
    enhancements,
    infinitesimal_character,
    is_cuspidal,
    is_discrete,
    is_tempered,
    line,
    parse_catalogue,
    validate,
)
from .springer import (
    SO,
    Sp,
    SpringerError,
    component_group,
    cuspidal_triples,
    generalized_springer,
    unipotent_classes,
)
from . import abps


class ExpressionError(SyntaxError):
    pass


# ---------------------------------------------------------------------------
# parameter expressions


def _split_terms(text):
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ExpressionError("unbalanced ')'")
        if ch == "+" and depth == 0:
            terms.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise ExpressionError("unbalanced '('")
    terms.append(cur)
    return terms


def _expand(text):
    """Flatten one level of parentheses distributively."""
    out = []
    for term in _split_terms(text):
        m = re.match(r"^(.*?)\(([^()]*)\)(.*)$", term)
        if not m:
            out.append(term)
            continue
        pre, inner, post = m.groups()
        for sub in _expand(inner):
            piece = "*".join(p.strip("*") for p in (pre, sub, post) if p.strip("*"))
            out.extend(_expand(piece))
    return out


_Q_RE = re.compile(r"^q(?:\^(?:\{(-?\d+)/2\}|(-?\d+)))?$")
_S_RE = re.compile(r"^S\[(\d+)\]$")
_VAR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_']*)(?:\^(-?\d+))?$")


def parse_parameter(text, catalogue=None) -> FormalParameter:
    """Parse a sum of ``char*S[a]*q^{h}*var`` terms; an omitted ``S``
    factor means ``S[1]`` and parentheses distribute."""
    catalogue = catalogue or DEFAULT_CATALOGUE
    summands = []
    for pos, term in enumerate(_expand(text.replace(" ", ""))):
        if not term:
            raise ExpressionError(f"empty term at position {pos}")
        a, twist, base = 1, ONE, None
        for factor in term.split("*"):
            if (m := _S_RE.match(factor)):
                a = int(m.group(1))
                continue
            if (m := _Q_RE.match(factor)):
                half, whole = m.groups()
                if half is not None:
                    twist = twist * q_power(int(half))
                elif whole is not None:
                    twist = twist * q_power(2 * int(whole))
                else:
                    twist = twist * q_power(2)
                continue
            if factor == "xi":
                twist = twist * MINUS_ONE
                continue
            if factor in catalogue:
                if base is not None:
                    raise ExpressionError(f"two characters in term {pos}")
                base = factor
                continue
            m = _VAR_RE.match(factor)
            if not m:
                raise ExpressionError(f"bad factor {factor!r} in term {pos}")
            name, power = m.groups()
            twist = twist * free(name) ** int(power or 1)
        summands.append((line(base or "1", twist, catalogue), a))
    return FormalParameter(tuple(summands))


# ---------------------------------------------------------------------------
# rendering


def render(rows, fmt, columns):
    if fmt == "json":
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"
    if fmt == "tsv":
        lines = ["\t".join(columns)]
        lines += ["\t".join(str(r[c]) for c in columns) for r in rows]
        return "\n".join(lines) + "\n"
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) if rows else len(c)
              for c in columns}
    out = ["| " + " | ".join(c.ljust(widths[c]) for c in columns) + " |",
           "| " + " | ".join("-" * widths[c] for c in columns) + " |"]
    for r in rows:
        out.append("| " + " | ".join(str(r[c]).ljust(widths[c]) for c in columns) + " |")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# table generators


def _parse_group(token, rank=None):
    if rank is None:
        m = re.fullmatch(r"([A-Za-z]+)(\d+)", token)
        if not m:
            raise ValueError(f"cannot read group {token!r}")
        token, rank = m.group(1), int(m.group(2))
    kind = token.capitalize() if token.lower() == "sp" else token.upper()
    return kind, int(rank)


def _block_letter(triple):
    if triple.is_principal:
        return "T"
    if all(triple.gl_rank(i) == 0 for i in range(len(triple.group.factors))):
        return "H"
    return "M"


def _mirror_symbol(bp):
    """The two-row symbol of a non-principal-block label: the roles of
    the rows are exchanged and the longer row sits at the bottom."""
    b = max(len(bp.alpha), len(bp.beta) + 1)
    alpha = (0,) * (b - len(bp.alpha)) + bp.alpha.ascending()
    beta = (0,) * (b - 1 - len(bp.beta)) + bp.beta.ascending()
    top = tuple(x + 2 * i for i, x in enumerate(beta))
    bottom = tuple(x + 2 * i + 1 for i, x in enumerate(alpha))
    return BCSymbol(top, bottom)


def _dlabel_symbol(label):
    width = max(len(label.alpha), len(label.beta))
    alpha = (0,) * (width - len(label.alpha)) + label.alpha.ascending()
    beta = (0,) * (width - len(label.beta)) + label.beta.ascending()
    top = tuple(x + 2 * i for i, x in enumerate(alpha))
    bottom = tuple(x + 2 * i for i, x in enumerate(beta))
    return f"({','.join(map(str, top)) or '-'}|{','.join(map(str, bottom)) or '-'})"


def _core_symbol(d, step0):
    return "(" + ",".join(str(step0 + 2 * i) for i in range(d)) + "|-)"


def springer_rows(kind, size, generalized=True):
    group = Sp(size) if kind == "Sp" else SO(size)
    rows = []
    for u in sorted(unipotent_classes(group),
                    key=lambda u: (tuple(-p for p in u.partitions[0].parts),
                                   u.tags[0])):
        for char in component_group(group, u).characters():
            triple, labels = generalized_springer(group, u, char)
            label = labels[0]
            block = _block_letter(triple)
            d = triple.ds[0]
            if kind == "Sp":
                if block == "H":
                    symbol = _core_symbol(d + 1, 0)
                elif block == "T":
                    symbol = str(symbol_of_bipartition(label))
                else:
                    symbol = str(_mirror_symbol(label))
            else:
                symbol = _core_symbol(d, 0) if block == "H" else _dlabel_symbol(label)
            shown = "1" if block == "H" else str(label) + ("'" if block == "M" else "")
            row = {
                "u": str(u.partitions[0]) + u.tags[0],
                "a_group": component_group(group, u).structure(),
                "character": str(char),
                "symbol": symbol,
                "block": block,
                "label": shown,
            }
            if not generalized and block != "T":
                continue
            if kind == "SO":
                row["label_times_sign"] = str(sign_twist(label)) if block != "H" else "1"
            rows.append(row)
    return rows


def cuspidal_rows(family, bound):
    rows = []
    for size in range(1, bound + 1):
        group = Sp(2 * size) if family == "Sp" else SO(size)
        full = [t for t in cuspidal_triples(group)
                if all(t.gl_rank(i) == 0 for i in range(len(group.factors)))]
        for t in full:
            marks = t.core_marks(0)
            char = " ".join(f"z{p}->{'-' if p in marks else '+'}"
                            for p in sorted(set(t.core_partition(0).parts)))
            rows.append({
                "group": str(group),
                "partition": str(t.core_partition(0)),
                "character": f"[{char}]",
            })
    return rows


def extquot_rows(rank):
    action = hyperoctahedral_action(rank)
    rows = []
    for fam in spectral_eq(action):
        rows.append({
            "base": str(fam.base),
            "stabilizer": fam.group.structure(),
            "irrep": str(fam.irrep),
            "kind": fam.kind,
        })
    return rows


def param_record(group, phi):
    validate(group, phi)
    data = centralizer_restriction(group, phi)
    groups = component_groups(group, phi)
    cusp, cusp_chars = is_cuspidal(group, phi)
    inf = infinitesimal_character(group, phi)
    return {
        "group": str(group),
        "parameter": str(phi),
        "centralizer": centralizer_display(data),
        "centralizer_connected": str(connected_centralizer(data)),
        "unipotent": str(data.unipotent),
        "a_group": groups.a_group.structure(),
        "a_generators": list(groups.a_group.subgroup_generators()),
        "a_connected": groups.a_connected.structure(),
        "s_order": groups.s_order,
        "discrete": is_discrete(group, phi),
        "tempered": is_tempered(group, phi),
        "cuspidal": cusp,
        "cuspidal_characters": [str(c) for c in cusp_chars],
        "infinitesimal_character": sorted(
            f"{l}^{m}" for l, m in inf.items()
        ),
    }


def support_rows(group, phi):
    data, chars = enhancements(group, phi)
    rows = []
    for eta in chars:
        res = cuspidal_support(group, phi, eta)
        rows.append({
            "character": str(eta),
            "levi": str(res.levi_dual),
            "support": str(res),
            "correcting": str(res.correcting),
            "weyl": abps.weyl_structure(res),
        })
    return rows


def _sp4_triple():
    G = PadicGroup("Sp", 4)
    return G, abps.inertial_triple(
        G, (line("zeta"), line("zeta")),
        FormalParameter(((line("1"), 1),)),
    )


def abps_rows():
    G, j = _sp4_triple()
    md = abps.mu(G, j)
    rows = []
    for e in md.entries:
        rows.append({
            "base": str(e.stratum.base),
            "irrep": str(e.irrep),
            "kind": e.family.kind if e.family else "member",
            "parameter": str(e.param),
            "character": str(e.eta),
            "unipotent": str(e.u),
            "component": str(e.component),
            "correcting": str(e.cochar),
            "weyl": abps.weyl_structure(e.support),
        })
    return rows


def action_rows():
    G, j = _sp4_triple()
    data = abps.build_inertial(G, j)
    rows = []
    for w, img in abps.action_table(data):
        rows.append({
            "images": str(w.images),
            "signs": str(w.signs),
            "result": str(img),
        })
    return rows


def parameters_rows():
    G = PadicGroup("Sp", 4)
    x = free("x")
    corpus = [
        parse_parameter("zeta*(S[3]+S[1]) + 1"),
        FormalParameter(((line("zeta", x), 2), (line("zeta", x.inverse()), 2),
                         (line("1"), 1))),
        parse_parameter("x*zeta + zeta + 1 + zeta + x^-1*zeta"),
        parse_parameter("zeta + xi*zeta + 1 + xi*zeta + zeta"),
    ]
    rows = []
    for phi in corpus:
        rec = param_record(G, phi)
        res_levis = sorted({
            r["levi"] for r in support_rows(G, phi)
        })
        rec["support_levis"] = res_levis
        rows.append({
            "parameter": rec["parameter"],
            "centralizer": rec["centralizer"],
            "centralizer_connected": rec["centralizer_connected"],
            "unipotent": rec["unipotent"],
            "a_group": rec["a_group"],
            "a_generators": ", ".join(rec["a_generators"]),
            "a_connected": rec["a_connected"],
            "support_levis": ", ".join(res_levis),
        })
    return rows


def packet_rows():
    G, j = _sp4_triple()
    md = abps.mu(G, j)
    targets = [
        ("(1, 1)", "(3,1)x(1)"),
        ("(z, z)", "(2)x(1)"),
        ("(1, z)", "(1)x(1,1)x(1)"),
        ("(1, -1)", "(1,1)x(1,1)x(1)"),
    ]
    rows = []
    for base, u in targets:
        packet = next(p for p in abps.packets(md)
                      if str(p.stratum.base) == base and str(p.u) == u)
        member = packet.members[0]
        rows.append({
            "parameter": str(member.param),
            "base": base,
            "unipotent": u,
            "size": packet.size,
            "matched": len(packet.members),
            "labels": ", ".join(str(e.irrep) for e in packet.members),
            "weyl": abps.weyl_structure(member.support),
        })
    return rows


FIXTURES = {
    "table1": (lambda: springer_rows("Sp", 6, generalized=False),
               ["u", "a_group", "character", "symbol", "block", "label"]),
    "table2": (lambda: springer_rows("Sp", 6),
               ["u", "a_group", "character", "symbol", "block", "label"]),
    "table3": (lambda: springer_rows("SO", 4),
               ["u", "a_group", "character", "symbol", "block", "label",
                "label_times_sign"]),
    "table4": (action_rows, ["images", "signs", "result"]),
    "table6": (parameters_rows,
               ["parameter", "centralizer", "centralizer_connected",
                "unipotent", "a_group", "a_generators", "a_connected",
                "support_levis"]),
    "table7": (packet_rows,
               ["parameter", "base", "unipotent", "size", "matched",
                "labels", "weyl"]),
    "figure1": (abps_rows,
                ["base", "irrep", "kind", "parameter", "character",
                 "unipotent", "component", "correcting", "weyl"]),
}


def write_fixtures(directory: Path, names=None):
    """Render the named fixtures in both formats; report which files
    changed relative to what was on disk."""
    directory.mkdir(parents=True, exist_ok=True)
    changed = []
    for name in names or sorted(FIXTURES):
        make, columns = FIXTURES[name]
        rows = make()
        for fmt, ext in (("md", "md"), ("json", "json")):
            path = directory / f"{name}.{ext}"
            text = render(rows, fmt, columns)
            old = path.read_text() if path.exists() else None
            if old != text:
                path.write_text(text)
                changed.append(str(path))
    return changed


# ---------------------------------------------------------------------------
# JSON record schema


SCHEMA = {
    "group": str,
    "parameter": str,
    "centralizer": str,
    "centralizer_connected": str,
    "unipotent": str,
    "a_group": str,
    "a_generators": list,
    "a_connected": str,
    "s_order": int,
    "discrete": bool,
    "tempered": bool,
    "cuspidal": bool,
    "cuspidal_characters": list,
    "infinitesimal_character": list,
}


def validate_record(record):
    if set(record) != set(SCHEMA):
        raise ValueError(f"record keys {sorted(record)} != schema keys")
    for key, type_ in SCHEMA.items():
        if not isinstance(record[key], type_):
            raise ValueError(f"field {key} is not {type_.__name__}")
    for key in ("a_generators", "cuspidal_characters", "infinitesimal_character"):
        if not all(isinstance(x, str) for x in record[key]):
            raise ValueError(f"field {key} must hold strings")
    return True


# ---------------------------------------------------------------------------
# argument handling


def _load_catalogue(path):
    if path is None:
        return DEFAULT_CATALOGUE
    return parse_catalogue(Path(path).read_text())


def build_parser():
    parser = argparse.ArgumentParser(prog="abpscalc")
    parser.add_argument("--format", choices=("md", "json", "tsv"), default="md")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("springer", help="generalized Springer table")
    p.add_argument("--group", required=True)
    p.add_argument("--rank", type=int)
    p.add_argument("--generalized", action="store_true")

    p = sub.add_parser("cuspidal", help="full-group cuspidal data")
    p.add_argument("--family", choices=("Sp", "SO"), required=True)
    p.add_argument("--max", type=int, default=10)

    p = sub.add_parser("extquot", help="spectral extended quotient of B_k")
    p.add_argument("--rank", type=int, required=True)

    for name in ("param", "support"):
        p = sub.add_parser(name)
        p.add_argument("--group", required=True)
        p.add_argument("--expr", required=True)
        p.add_argument("--chars")

    sub.add_parser("abps", help="the rank-2 symplectic matched table")

    p = sub.add_parser("fixtures")
    p.add_argument("--all", action="store_true")
    p.add_argument("--name", action="append")
    p.add_argument("--dir", default="fixtures")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "springer":
            kind, size = _parse_group(args.group, args.rank)
            rows = springer_rows(kind, size, generalized=args.generalized)
            cols = ["u", "a_group", "character", "symbol", "block", "label"]
            if kind == "SO":
                cols.append("label_times_sign")
            sys.stdout.write(render(rows, args.format, cols))
        elif args.command == "cuspidal":
            rows = cuspidal_rows(args.family, args.max)
            sys.stdout.write(render(rows, args.format,
                                    ["group", "partition", "character"]))
        elif args.command == "extquot":
            rows = extquot_rows(args.rank)
            sys.stdout.write(render(rows, args.format,
                                    ["base", "stabilizer", "irrep", "kind"]))
        elif args.command == "param":
            kind, size = _parse_group(args.group)
            phi = parse_parameter(args.expr, _load_catalogue(args.chars))
            record = param_record(PadicGroup(kind, size), phi)
            validate_record(record)
            sys.stdout.write(json.dumps(record, indent=2, sort_keys=True) + "\n")
        elif args.command == "support":
            kind, size = _parse_group(args.group)
            phi = parse_parameter(args.expr, _load_catalogue(args.chars))
            rows = support_rows(PadicGroup(kind, size), phi)
            sys.stdout.write(render(rows, args.format,
                                    ["character", "levi", "support",
                                     "correcting", "weyl"]))
        elif args.command == "abps":
            rows = abps_rows()
            sys.stdout.write(render(rows, args.format, FIXTURES["figure1"][1]))
        elif args.command == "fixtures":
            names = None if args.all or not args.name else args.name
            changed = write_fixtures(Path(args.dir), names)
            for path in changed:
                print(f"updated {path}")
            return 1 if changed else 0
    except (SpringerError, ExpressionError, UnknownCharacter, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


def main():  # pragma: no cover - console entry
    raise SystemExit(run())


if __name__ == "__main__":  # pragma: no cover
    main()
