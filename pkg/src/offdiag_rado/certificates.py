"""Forcing-chain certificates for upper bounds and their checker.

A certificate is a case tree. The root splits on the color of the least element
(1, or alpha in the continuous setting); inner nodes may split again on the color
of another element. Inside a case, each ``step`` names a triple ``(x, y, z)`` of
one equation whose two premises already carry that equation's color, so the
remaining element is forced to the other color. A case closes when some triple
is monochromatic for its equation.

Elements are linear forms in (k, c, alpha) and are checked at concrete rational
parameter values. File syntax::

    claim <id> <discrete|continuous>     # one line per setting the chains serve
    applies <low|high>
    repair <claim-id> <free text>
    branch <form> <R|B> {
      step <x-form> <y-form> <c|k> => <form> <R|B>
      contra <x-form> <y-form> <c|k>
      branch ... { ... }                  # exactly two, one per color
    }

Forms are sums of terms ``coef*k``, ``coef*c``, ``coef*alpha`` and constants,
with rational coefficients ``num/den``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterator, Optional, Union

from .core import Color, EqTag, Rational, as_rational, format_rational
from .formulas import Branch, branch_of, rado_formula_continuous, rado_formula_discrete

class Setting(enum.Enum):
    DISCRETE = "discrete"
    CONTINUOUS = "continuous"


@dataclass(frozen=True, order=True)
class LinearForm:
    k: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    alpha: Fraction = Fraction(0)
    const: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("k", "c", "alpha", "const"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.k + other.k, self.c + other.c, self.alpha + other.alpha, self.const + other.const)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.k - other.k, self.c - other.c, self.alpha - other.alpha, self.const - other.const)

    def evaluate(self, c: Rational, k: Rational, alpha: Rational) -> Fraction:
        return self.k * k + self.c * c + self.alpha * alpha + self.const

    def canonical(self) -> str:
        """Always four terms: ``a*k+b*c+d*alpha+e``."""
        parts = [
            f"{format_rational(self.k)}*k",
            f"{format_rational(self.c)}*c",
            f"{format_rational(self.alpha)}*alpha",
            format_rational(self.const),
        ]
        text = parts[0]
        for part in parts[1:]:
            text += part if part.startswith("-") else "+" + part
        return text

    def __str__(self):
        """Compact human form, e.g. ``k+2c+4α``."""
        out = ""
        for name, coef in (("k", self.k), ("c", self.c), ("α", self.alpha), ("", self.const)):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if name and mag == 1:
                body = name
            elif name and mag.denominator != 1:
                body = f"({format_rational(mag)}){name}"
            else:
                body = format_rational(mag) + name
            out += sign + body
        if not out:
            return "0"
        return out[1:] if out[0] == "+" else out

    @classmethod
    def var(cls, name: str) -> "LinearForm":
        return cls(**{name: Fraction(1)})


ALPHA = LinearForm.var("alpha")

_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*)?\s*(alpha|k|c)?\s*")


def parse_form(text: str) -> LinearForm:
    coefs = {"k": Fraction(0), "c": Fraction(0), "alpha": Fraction(0), "const": Fraction(0)}
    pos, first = 0, True
    text = text.strip()
    if not text:
        raise ValueError("empty linear form")
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, num, star, var = m.groups()
        if m.end() == pos or (num is None and var is None) or (star and not (num and var)):
            raise ValueError(f"cannot parse linear form {text!r} at offset {pos}")
        if sign is None and not first:
            raise ValueError(f"missing operator in linear form {text!r} at offset {pos}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        coefs[var or "const"] += value
        pos, first = m.end(), False
    return LinearForm(**coefs)


@dataclass(frozen=True)
class ForcingStep:
    """``(x, y, x + y + shift)`` for ``equation``, forcing ``conclusion`` to ``color``."""

    x: LinearForm
    y: LinearForm
    equation: EqTag
    conclusion: LinearForm
    color: Color

    @property
    def z(self) -> LinearForm:
        return self.x + self.y + LinearForm.var(self.equation.value)

    def triple(self) -> tuple[LinearForm, LinearForm, LinearForm]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Contradiction:
    x: LinearForm
    y: LinearForm
    equation: EqTag

    @property
    def z(self) -> LinearForm:
        return self.x + self.y + LinearForm.var(self.equation.value)

    def triple(self) -> tuple[LinearForm, LinearForm, LinearForm]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class CaseNode:
    """One case: assume ``element`` has ``color``, run ``steps``, then close or split."""

    element: LinearForm
    color: Color
    steps: tuple[ForcingStep, ...] = ()
    terminal: Optional[Contradiction] = None
    children: tuple["CaseNode", ...] = ()


@dataclass(frozen=True)
class Certificate:
    claim_id: str
    setting: Setting
    applies: Optional[Branch]
    cases: tuple[CaseNode, ...]
    repairs: tuple[str, ...] = ()
    source: Optional[str] = field(default=None, compare=False)

    def iter_steps(self) -> Iterator[tuple[tuple[int, ...], int, ForcingStep]]:
        """Yield ``(case path, step index, step)`` in file order."""

        def walk(node: CaseNode, path: tuple[int, ...]):
            for i, step in enumerate(node.steps):
                yield path, i, step
            for j, child in enumerate(node.children):
                yield from walk(child, path + (j,))

        for j, node in enumerate(self.cases):
            yield from walk(node, (j,))

    def iter_cases(self) -> Iterator[tuple[tuple[int, ...], CaseNode]]:
        def walk(node: CaseNode, path):
            yield path, node
            for j, child in enumerate(node.children):
                yield from walk(child, path + (j,))

        for j, node in enumerate(self.cases):
            yield from walk(node, (j,))

    def forms(self) -> list[LinearForm]:
        """Every distinct element form in the tree, in first-use order."""
        seen: dict[LinearForm, None] = {}
        for _, node in self.iter_cases():
            seen.setdefault(node.element)
            for step in node.steps:
                for f in step.triple():
                    seen.setdefault(f)
            if node.terminal is not None:
                for f in node.terminal.triple():
                    seen.setdefault(f)
        return list(seen)

    def replace_step(self, path: tuple[int, ...], index: int, step: ForcingStep) -> "Certificate":
        def rebuild(node: CaseNode, rest: tuple[int, ...]) -> CaseNode:
            if not rest:
                steps = list(node.steps)
                steps[index] = step
                return replace(node, steps=tuple(steps))
            kids = list(node.children)
            kids[rest[0]] = rebuild(kids[rest[0]], rest[1:])
            return replace(node, children=tuple(kids))

        cases = list(self.cases)
        cases[path[0]] = rebuild(cases[path[0]], path[1:])
        return replace(self, cases=tuple(cases))

    def replace_case(self, path: tuple[int, ...], node: CaseNode) -> "Certificate":
        def rebuild(cur: CaseNode, rest: tuple[int, ...]) -> CaseNode:
            if not rest:
                return node
            kids = list(cur.children)
            kids[rest[0]] = rebuild(kids[rest[0]], rest[1:])
            return replace(cur, children=tuple(kids))

        cases = list(self.cases)
        cases[path[0]] = rebuild(cases[path[0]], path[1:])
        return replace(self, cases=tuple(cases))


class CertificateSyntaxError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _eq(token: str, line: int) -> EqTag:
    try:
        return EqTag(token)
    except ValueError:
        raise CertificateSyntaxError(f"equation must be c or k, got {token!r}", line) from None


def _col(token: str, line: int) -> Color:
    try:
        return Color.parse(token)
    except ValueError as exc:
        raise CertificateSyntaxError(str(exc), line) from None


def _form(token: str, line: int) -> LinearForm:
    try:
        return parse_form(token)
    except ValueError as exc:
        raise CertificateSyntaxError(str(exc), line) from None


def _check_split(children: list[CaseNode], line: int) -> None:
    if len(children) != 2:
        raise CertificateSyntaxError(f"a case split needs exactly two branches, got {len(children)}", line)
    a, b = children
    if a.element != b.element or a.color is b.color:
        raise CertificateSyntaxError("split branches must cover both colors of one element", line)


def parse_certificates(text: str, source: Optional[str] = None) -> list[Certificate]:
    """Parse a certificate file; one Certificate per ``claim`` line (default: one, discrete)."""
    claims: list[tuple[str, Setting]] = []
    applies: Optional[Branch] = None
    repairs: list[tuple[str, str]] = []
    # stack of open blocks: (element, color, steps, terminal, children, opening line)
    stack: list[list] = []
    top: list[CaseNode] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head in ("claim", "applies", "repair") and stack:
            raise CertificateSyntaxError(f"{head} must precede the first branch", lineno)
        if head == "claim":
            parts = rest.split()
            if len(parts) != 2 or parts[1] not in ("discrete", "continuous"):
                raise CertificateSyntaxError("expected 'claim <id> <discrete|continuous>'", lineno)
            claims.append((parts[0], Setting(parts[1])))
        elif head == "applies":
            table = {"low": Branch.LOW, "high": Branch.HIGH}
            if rest not in table:
                raise CertificateSyntaxError("expected 'applies low' or 'applies high'", lineno)
            applies = table[rest]
        elif head == "repair":
            cid, _, note = rest.partition(" ")
            repairs.append((cid, note.strip()))
        elif head == "branch":
            parts = rest.split()
            if len(parts) != 3 or parts[2] != "{":
                raise CertificateSyntaxError("expected 'branch <form> <R|B> {'", lineno)
            if stack and stack[-1][3] is not None:
                raise CertificateSyntaxError("branch after contra in the same case", lineno)
            stack.append([_form(parts[0], lineno), _col(parts[1], lineno), [], None, [], lineno])
        elif head == "step":
            if not stack:
                raise CertificateSyntaxError("step outside a branch", lineno)
            parts = rest.split()
            if len(parts) != 6 or parts[3] != "=>":
                raise CertificateSyntaxError("expected 'step <x> <y> <c|k> => <form> <R|B>'", lineno)
            block = stack[-1]
            if block[3] is not None or block[4]:
                raise CertificateSyntaxError("step after contra or nested branch", lineno)
            block[2].append(
                ForcingStep(
                    _form(parts[0], lineno),
                    _form(parts[1], lineno),
                    _eq(parts[2], lineno),
                    _form(parts[4], lineno),
                    _col(parts[5], lineno),
                )
            )
        elif head == "contra":
            if not stack:
                raise CertificateSyntaxError("contra outside a branch", lineno)
            parts = rest.split()
            if len(parts) != 3:
                raise CertificateSyntaxError("expected 'contra <x> <y> <c|k>'", lineno)
            block = stack[-1]
            if block[3] is not None or block[4]:
                raise CertificateSyntaxError("a case has at most one contra and no split after it", lineno)
            block[3] = Contradiction(_form(parts[0], lineno), _form(parts[1], lineno), _eq(parts[2], lineno))
        elif head == "}":
            if not stack:
                raise CertificateSyntaxError("unbalanced '}'", lineno)
            element, color, steps, terminal, children, opened = stack.pop()
            if terminal is None and not children:
                raise CertificateSyntaxError("case ends with neither contra nor split", opened)
            if children:
                _check_split(children, opened)
            node = CaseNode(element, color, tuple(steps), terminal, tuple(children))
            (stack[-1][4] if stack else top).append(node)
        else:
            raise CertificateSyntaxError(f"unknown directive {head!r}", lineno)

    if stack:
        raise CertificateSyntaxError("unclosed branch", stack[-1][5])
    _check_split(top, None)
    if top[0].element != ALPHA:
        raise CertificateSyntaxError("the root split must be on the least element 'alpha'")
    if not claims:
        claims = [("external", Setting.DISCRETE)]
    return [
        Certificate(
            claim_id=cid,
            setting=setting,
            applies=applies,
            cases=tuple(top),
            repairs=tuple(note for rid, note in repairs if rid == cid),
            source=source,
        )
        for cid, setting in claims
    ]


def _dump_case(node: CaseNode, depth: int, out: list[str]) -> None:
    pad = "  " * depth
    out.append(f"{pad}branch {node.element.canonical()} {node.color.value} {{")
    for s in node.steps:
        out.append(
            f"{pad}  step {s.x.canonical()} {s.y.canonical()} {s.equation.value}"
            f" => {s.conclusion.canonical()} {s.color.value}"
        )
    if node.terminal is not None:
        t = node.terminal
        out.append(f"{pad}  contra {t.x.canonical()} {t.y.canonical()} {t.equation.value}")
    for child in node.children:
        _dump_case(child, depth + 1, out)
    out.append(f"{pad}}}")


def dump_certificate(cert: Certificate) -> str:
    out = [f"claim {cert.claim_id} {cert.setting.value}"]
    if cert.applies is not None:
        out.append(f"applies {'low' if cert.applies is Branch.LOW else 'high'}")
    out += [f"repair {cert.claim_id} {note}" for note in cert.repairs]
    for node in cert.cases:
        _dump_case(node, 0, out)
    return "\n".join(out) + "\n"


def load_certificates(path: Union[str, Path]) -> list[Certificate]:
    path = Path(path)
    return parse_certificates(path.read_text(), source=str(path))


BUILTIN_FILES = ("low_branch.cert", "high_branch.cert")


def builtin_certificates() -> list[Certificate]:
    certs: list[Certificate] = []
    for name in BUILTIN_FILES:
        text = resources.files(__package__).joinpath("data", name).read_text()
        certs.extend(parse_certificates(text, source=name))
    return certs


def builtin_certificate(branch: Branch, setting: Setting) -> Certificate:
    for cert in builtin_certificates():
        if cert.applies is branch and cert.setting is setting:
            return cert
    raise LookupError(f"no builtin certificate for {branch.value}/{setting.value}")


# -- checking ---------------------------------------------------------------


class StepReason(enum.Enum):
    IDENTITY_FAILS = "identity-fails"
    OUT_OF_RANGE = "out-of-range"
    PREMISE_UNCOLORED = "premise-uncolored"
    PREMISE_WRONG_COLOR = "premise-wrong-color"
    CONCLUSION_NOT_FORCED = "conclusion-not-forced"
    TERMINAL_NOT_MONOCHROMATIC = "terminal-not-monochromatic"


@dataclass(frozen=True)
class TraceLine:
    path: tuple[int, ...]
    text: str


@dataclass(frozen=True)
class CertifiedUnsat:
    trace: tuple[TraceLine, ...] = ()

    ok = True


@dataclass(frozen=True)
class StepError:
    """``index`` is the step position within the case; -1 means the case assumption,
    ``len(steps)`` the terminal."""

    branch: tuple[int, ...]
    index: int
    reason: StepReason
    detail: str
    trace: tuple[TraceLine, ...] = ()

    ok = False

    def __str__(self):
        where = "/".join(str(p) for p in self.branch)
        return f"case {where} step {self.index}: {self.reason.value}: {self.detail}"


class _Abort(Exception):
    def __init__(self, error: StepError):
        self.error = error


def _fmt_triple(values, equation: EqTag) -> str:
    return "(" + ",".join(format_rational(v) for v in values) + f")_{equation.value}"


def check_certificate(
    cert: Certificate, c: Rational, k: Rational, alpha: Optional[Rational], n: Rational
) -> Union[CertifiedUnsat, StepError]:
    """Verify that no coloring of the domain avoids both solution types.

    The domain is the integers of [1, n] for a discrete certificate (alpha is
    then forced to 1) and the real interval [alpha, n] otherwise.
    """
    c, k, n = as_rational(c), as_rational(k), as_rational(n)
    discrete = cert.setting is Setting.DISCRETE
    alpha = Fraction(1) if discrete or alpha is None else as_rational(alpha)
    trace: list[TraceLine] = []

    def ev(form: LinearForm) -> Fraction:
        return form.evaluate(c, k, alpha)

    def in_domain(v: Fraction) -> bool:
        if discrete and v.denominator != 1:
            return False
        return alpha <= v <= n

    def fail(path, index, reason, detail):
        raise _Abort(StepError(path, index, reason, detail, tuple(trace)))

    def range_check(path, index, forms):
        for form in forms:
            v = ev(form)
            if not in_domain(v):
                where = "an integer in [1, " if discrete else f"in [{format_rational(alpha)}, "
                fail(path, index, StepReason.OUT_OF_RANGE, f"{form} = {format_rational(v)} is not {where}{format_rational(n)}]")

    def run_case(node: CaseNode, path: tuple[int, ...], colors: dict[Fraction, Color]) -> None:
        colors = dict(colors)
        e = ev(node.element)
        range_check(path, -1, [node.element])
        label = f"suppose {format_rational(e)} is {node.color.word}"
        if e in colors and colors[e] is not node.color:
            trace.append(TraceLine(path, f"{label}: impossible, already {colors[e].word}; case closed"))
            return
        if e in colors:
            label += " (already forced)"
        colors[e] = node.color
        trace.append(TraceLine(path, label))
        for i, step in enumerate(node.steps):
            triple = step.triple()
            positions = [j for j, f in enumerate(triple) if f == step.conclusion]
            if not positions:
                fail(path, i, StepReason.IDENTITY_FAILS,
                     f"{step.conclusion} is not one of ({step.x}, {step.y}, {step.z})")
            range_check(path, i, triple)
            values = [ev(f) for f in triple]
            want = step.equation.color
            text = f"{_fmt_triple(values, step.equation)} ⟹ {format_rational(ev(step.conclusion))} is {step.color.word}"
            for j, f in enumerate(triple):
                if f == step.conclusion:
                    continue
                have = colors.get(values[j])
                if have is None:
                    fail(path, i, StepReason.PREMISE_UNCOLORED, f"{text}: premise {format_rational(values[j])} uncolored")
                if have is not want:
                    fail(path, i, StepReason.PREMISE_WRONG_COLOR,
                         f"{text}: premise {format_rational(values[j])} is {have.word}, needs {want.word}")
            if step.color is not want.other:
                fail(path, i, StepReason.CONCLUSION_NOT_FORCED,
                     f"{text}: a {step.equation.value}-triple only forces {want.other.word}")
            target = ev(step.conclusion)
            have = colors.get(target)
            if have is want:
                trace.append(TraceLine(path, f"{text}: {_fmt_triple(values, step.equation)} is already {want.word}; contradiction"))
                return
            colors[target] = step.color
            trace.append(TraceLine(path, text))
        if node.terminal is not None:
            t = node.terminal
            idx = len(node.steps)
            range_check(path, idx, t.triple())
            values = [ev(f) for f in t.triple()]
            want = t.equation.color
            if not all(colors.get(v) is want for v in values):
                shown = ", ".join(f"{format_rational(v)}:{colors[v].word if v in colors else '?'}" for v in values)
                fail(path, idx, StepReason.TERMINAL_NOT_MONOCHROMATIC,
                     f"{_fmt_triple(values, t.equation)} is not all {want.word} ({shown})")
            trace.append(TraceLine(path, f"{_fmt_triple(values, t.equation)} is a {want.word} solution; contradiction"))
            return
        for j, child in enumerate(node.children):
            run_case(child, path + (j,), colors)

    try:
        for j, node in enumerate(cert.cases):
            run_case(node, (j,), {})
    except _Abort as abort:
        return abort.error
    return CertifiedUnsat(tuple(trace))


# -- upper-bound reports ----------------------------------------------------


@dataclass(frozen=True)
class ElementDiagnostic:
    form: LinearForm
    value: Fraction
    in_range: bool


@dataclass(frozen=True)
class UpperBoundReport:
    c: Fraction
    k: Fraction
    alpha: Optional[Fraction]
    n: Fraction
    claim_id: str
    result: Union[CertifiedUnsat, StepError]
    diagnostics: tuple[ElementDiagnostic, ...]

    @property
    def certified(self) -> bool:
        return isinstance(self.result, CertifiedUnsat)

    @property
    def out_of_range(self) -> list[ElementDiagnostic]:
        return [d for d in self.diagnostics if not d.in_range]


def certify_upper_bound(c: Rational, k: Rational, alpha: Optional[Rational] = None) -> UpperBoundReport:
    """Check the builtin chain for (c, k) at N = formula value (discrete when alpha is None)."""
    c, k = as_rational(c), as_rational(k)
    branch = branch_of(c, k)
    if branch is Branch.PARITY_INFINITE:
        raise ValueError(f"c={c}, k={k} differ in parity; the Rado number is infinite")
    if alpha is None:
        setting, a = Setting.DISCRETE, Fraction(1)
        n = rado_formula_discrete(c, k).value
    else:
        setting, a = Setting.CONTINUOUS, as_rational(alpha)
        n = rado_formula_continuous(c, k, a).value
    cert = builtin_certificate(branch, setting)
    result = check_certificate(cert, c, k, a, n)
    diags = []
    for form in cert.forms():
        v = form.evaluate(c, k, a)
        ok = a <= v <= n and (setting is Setting.CONTINUOUS or v.denominator == 1)
        diags.append(ElementDiagnostic(form, v, ok))
    return UpperBoundReport(c, k, None if alpha is None else a, n, cert.claim_id, result, tuple(diags))
