"""Bounded search over ternary prefixes with small abelian complexity, and lemma suites.

The search only ever sees finite words, whose letter frequencies are always
rational.  It maps which prefixes survive the bound ``rho(n) <= rho_bound``;
it says nothing by itself about infinite words.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .complexity import (
    abelian_counts,
    balance_profile,
    check_balance_abelian_inequality,
    classify_parikh_set,
    _distinct_rows,
    complexity_profile,
    parikh_set,
    window_parikh,
)
from .decoloring import DecoloringSpec, decolor, sturmian_diagnostic, verify_decolored_counts
from .errors import InconsistentSet, InvalidParameter, ResourceBound, WordlabError
from .frequency import (
    FrequencyVector,
    dot,
    empirical_frequencies,
    exact_frequencies,
    integer_relation_search,
    relation_from_low_abelian,
)
from .induction import induce, matrix_rank_check
from .words import FiniteWord, Periodic, RotationBinary, RotationTernary, WordGeneratorSpec, generate

DISCLAIMER = (
    "Finite prefixes only. Survivors of a finite search neither refute nor confirm any "
    "statement about infinite words; every finite word has rational letter frequencies, "
    "so the integer relations reported here are trivially expected at finite length."
)

SEARCH_LETTERS = "123"


@dataclass(frozen=True)
class SearchConfig:
    max_length: int
    rho_bound: int = 3
    report_top: int = 10
    require_all_letters: bool = False
    symmetry: bool = False  # fix the first letter to "1"; counts shrink by a factor 3
    node_budget: Optional[int] = None
    collect_all: bool = False

    def __post_init__(self):
        if self.max_length < 1:
            raise InvalidParameter("max_length must be >= 1")
        if self.rho_bound < 1:
            raise InvalidParameter("rho_bound must be >= 1")
        if self.report_top < 0:
            raise InvalidParameter("report_top must be >= 0")


class WindowSets:
    """Multisets of window Parikh vectors for every window length, with undo.

    Parikh vectors are packed into integers in base ``max_length + 1`` so a
    window's key is the difference of two packed prefix sums.
    """

    def __init__(self, d: int, max_length: int):
        self.base = max_length + 1
        self.unit = [self.base**i for i in range(d)]
        self.prefix = [0]
        self.letters: list[int] = []
        self.sets: list[dict[int, int]] = [dict() for _ in range(max_length + 1)]

    def __len__(self):
        return len(self.letters)

    def rho(self, n: int) -> int:
        return len(self.sets[n])

    def push(self, letter: int) -> int:
        """Append a letter; return the largest ``rho(n)`` among the window sets it touched."""
        top = self.prefix[-1] + self.unit[letter]
        self.prefix.append(top)
        self.letters.append(letter)
        m = len(self.letters)
        worst = 0
        for n in range(1, m + 1):
            key = top - self.prefix[m - n]
            s = self.sets[n]
            s[key] = s.get(key, 0) + 1
            if len(s) > worst:
                worst = len(s)
        return worst

    def pop(self) -> None:
        m = len(self.letters)
        top = self.prefix[-1]
        for n in range(1, m + 1):
            key = top - self.prefix[m - n]
            s = self.sets[n]
            c = s[key] - 1
            if c:
                s[key] = c
            else:
                del s[key]
        self.prefix.pop()
        self.letters.pop()

    def decode(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in self.unit:
            key, r = divmod(key, self.base)
            out.append(r)
        return tuple(out)

    def parikh_sets(self) -> list[set[tuple[int, ...]]]:
        return [{self.decode(k) for k in s} for s in self.sets[1 : len(self.letters) + 1]]


@dataclass
class Survivor:
    word: str
    frequencies: tuple[Fraction, ...]
    relation: Optional[tuple[int, ...]]

    def as_dict(self):
        return {
            "word": self.word,
            "frequencies": [str(f) for f in self.frequencies],
            "relation": list(self.relation) if self.relation is not None else None,
            "relation_note": "trivially expected at finite length",
        }


@dataclass
class SearchReport:
    config: SearchConfig
    counts_by_length: dict[int, int]
    survivors: list[Survivor]
    nodes: int
    partial: bool = False
    all_survivors: Optional[list[str]] = None
    disclaimer: str = DISCLAIMER

    def as_dict(self):
        out = {
            "config": asdict(self.config),
            "counts_by_length": {str(k): v for k, v in sorted(self.counts_by_length.items())},
            "survivors": [s.as_dict() for s in self.survivors],
            "nodes": self.nodes,
            "partial": self.partial,
            "disclaimer": self.disclaimer,
        }
        if self.config.symmetry:
            out["symmetry_factor"] = 3
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)


def _describe(word: str) -> Survivor:
    L = len(word)
    counts = [word.count(s) for s in SEARCH_LETTERS]
    freqs = tuple(Fraction(c, L) for c in counts)
    rel = integer_relation_search(FrequencyVector(freqs, "empirical", tuple(SEARCH_LETTERS), L), bound=20, tolerance=0)
    return Survivor(word, freqs, rel.coefficients if rel is not None else None)


class _BudgetExceeded(Exception):
    pass


def search_rho_bounded(cfg: SearchConfig) -> SearchReport:
    """Depth-first enumeration of words over ``123`` with ``rho(n) <= rho_bound`` for all ``n``.

    Children are visited in lexicographic order, so survivors at the full
    length come out lexicographically sorted.  Abelian complexity of a prefix
    can only grow under extension, which makes pruning exact.
    """
    L = cfg.max_length
    ws = WindowSets(3, L)
    counts = {n: 0 for n in range(1, L + 1)}
    kept: list[str] = []
    collected: list[str] = [] if cfg.collect_all else None
    nodes = 0
    letters = SEARCH_LETTERS

    def full_alphabet() -> bool:
        return len(set(ws.letters)) == 3

    def visit():
        nonlocal nodes
        m = len(ws)
        if m and (not cfg.require_all_letters or full_alphabet()):
            counts[m] += 1
            if m == L:
                word = "".join(letters[i] for i in ws.letters)
                if len(kept) < cfg.report_top:
                    kept.append(word)
                if collected is not None:
                    collected.append(word)
        if m == L:
            return
        choices = (0,) if (cfg.symmetry and m == 0) else (0, 1, 2)
        for a in choices:
            nodes += 1
            if cfg.node_budget is not None and nodes > cfg.node_budget:
                raise _BudgetExceeded
            if ws.push(a) <= cfg.rho_bound:
                visit()
            ws.pop()

    partial = False
    try:
        visit()
    except _BudgetExceeded:
        partial = True
    report = SearchReport(cfg, counts, [_describe(w) for w in kept], nodes, partial, collected)
    if partial:
        raise ResourceBound(f"node budget {cfg.node_budget} exceeded", partial=report)
    return report


# --------------------------------------------------------------------------
# lemma suites

SUITES = ("eq4", "lemma10", "lemma16", "lemma19", "lemma22", "periodicity")


@dataclass(frozen=True)
class SuiteBounds:
    n_max: int = 100
    ell_max: int = 20
    block_trials: int = 200
    tolerance: float = 1e-3
    seed: int = 0
    ell: Optional[int] = None  # restrict induction checks to one block length


@dataclass(frozen=True)
class CorpusEntry:
    """A word to check; ``word`` overrides the generated prefix (fault injection)."""

    spec: WordGeneratorSpec
    word: Optional[FiniteWord] = None
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or self.spec.name or repr(self.spec.variant)

    def materialize(self) -> FiniteWord:
        return self.word if self.word is not None else generate(self.spec)


@dataclass
class CheckResult:
    word: str
    check: str
    status: str  # pass | fail | skipped
    detail: dict = field(default_factory=dict)


@dataclass
class SuiteReport:
    results: list[CheckResult]
    bounds: SuiteBounds

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def matrix(self) -> dict[str, dict[str, str]]:
        out: dict[str, dict[str, str]] = {}
        for r in self.results:
            out.setdefault(r.word, {})[r.check] = r.status
        return out

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == "fail"]

    def as_dict(self):
        return {
            "bounds": asdict(self.bounds),
            "ok": self.ok,
            "matrix": self.matrix(),
            "failures": [asdict(r) for r in self.failures()],
            "details": [asdict(r) for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, default=str)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _check_eq4(w, entry, b):
    n_top = min(b.n_max, w.length)
    prof = complexity_profile(w, n_top)
    bad = [v for v in check_balance_abelian_inequality(prof) if not v.advisory]
    advisory = [v for v in check_balance_abelian_inequality(prof) if v.advisory]
    detail = {"n_max": n_top, "advisory_upper_violations": len(advisory)}
    if bad:
        detail["counterexample"] = asdict(bad[0])
    return _status(not bad), detail


def _frequencies_for(entry: CorpusEntry, w: FiniteWord) -> FrequencyVector:
    if entry.word is None:
        try:
            return exact_frequencies(entry.spec)
        except WordlabError:
            pass
    return empirical_frequencies(w)


def lemma10_check(w: FiniteWord, f: FrequencyVector, ell_max: int, tolerance: float = 1e-3):
    """Every length with at most two abelian classes yields information that ``f`` satisfies.

    Returns ``(status, detail)``; binary words only contribute single-class
    lengths, since two classes of a binary word carry no relation.
    """
    d = len(w.alphabet)
    checked = []
    counterexample = None
    for ell in range(1, min(ell_max, w.length) + 1):
        ps = parikh_set(w, ell)
        if len(ps) > 2:
            continue
        try:
            out = relation_from_low_abelian(ps, ell)
        except InconsistentSet:
            continue
        if isinstance(out, FrequencyVector):
            diffs = [abs(float(a) - float(b)) for a, b in zip(out.values, f.values)]
            if f.is_exact:
                ok = all(_exact_zero(a - b) for a, b in zip(out.values, f.values))
            else:
                ok = max(diffs) <= tolerance + float(f.error)
            residual = max(diffs)
            q = None
        else:
            q = out.coefficients
            value = dot(q, f)
            residual = abs(float(value))
            if f.is_exact:
                ok = value == 0
            else:
                ok = residual <= tolerance + sum(abs(c) for c in q) * float(f.error)
        checked.append({"ell": ell, "classes": len(ps), "relation": q, "residual": residual})
        if not ok and counterexample is None:
            counterexample = checked[-1]
    if not checked:
        return "skipped", {"reason": "no length with at most two abelian classes" if d > 2 else "binary word has no single-class length"}
    detail = {"lengths": len(checked), "source": f.source, "max_residual": max(c["residual"] for c in checked)}
    if counterexample:
        detail["counterexample"] = counterexample
    return _status(counterexample is None), detail


def _exact_zero(v) -> bool:
    return v == 0


def _check_lemma10(w, entry, b):
    return lemma10_check(w, _frequencies_for(entry, w), b.ell_max, b.tolerance)


def _check_lemma16(w, entry, b):
    rng = random.Random(f"{b.seed}:{entry.label}")
    ell_hi = min(b.ell_max, w.length)
    ells = [b.ell] if b.ell else list(range(1, ell_hi + 1))
    inductions = {ell: induce(w, ell) for ell in ells}
    ps = w.prefix_sums()
    failures = []
    for _ in range(b.block_trials):
        ell = b.ell or rng.randint(1, ell_hi)
        n = rng.randint(0, w.length // ell)
        ind = inductions[ell]
        rhs = ind.matrix.apply(ind.word.prefix(n).counts() if n else np.zeros(len(ind.alphabet), dtype=np.int64))
        diff = ps[n * ell] - rhs
        if diff.any():
            failures.append({"ell": ell, "n": n, "difference": diff.tolist()})
            break
    for ell in ells:
        ind = inductions[ell]
        sums = ind.matrix.array.sum(axis=0)
        if not (sums == ell).all():
            failures.append({"ell": ell, "column_sums": sums.tolist()})
            break
        if not matrix_rank_check(ind.matrix, allow_non_square=True).injective:
            continue
        n_top = min(b.n_max, ind.word.length)
        rho_ind = abelian_counts(ind.word, n_top)
        for n in range(1, n_top + 1):
            base = _distinct_rows(window_parikh(w, n * ell, ps), n * ell)
            if rho_ind[n - 1] > base:
                failures.append({"ell": ell, "n": n, "rho_induced": int(rho_ind[n - 1]), "rho_base": base})
                break
        if failures:
            break
    detail = {"trials": b.block_trials, "lengths": len(ells)}
    if failures:
        detail["counterexample"] = failures[0]
    return _status(not failures), detail


def lemma19_check(w: FiniteWord, ell_max: int):
    """At lengths with three classes and a letter of deviation 2, the classes form a Chain or LShape."""
    if len(w.alphabet) != 3:
        return "skipped", {"reason": "not ternary"}
    ps = w.prefix_sums()
    tested = []
    for ell in range(1, min(ell_max, w.length) + 1):
        win = window_parikh(w, ell, ps)
        if not ((win.max(axis=0) - win.min(axis=0)) == 2).any():
            continue
        classes = parikh_set(w, ell)
        if len(classes) != 3:
            continue
        shape = classify_parikh_set(classes)
        tested.append({"ell": ell, "kind": shape.kind})
        if shape.kind not in ("Chain", "LShape"):
            return "fail", {"counterexample": {"ell": ell, "classes": [list(c) for c in sorted(classes)]}}
    if not tested:
        return "skipped", {"reason": "no length with three classes and a deviation-2 letter"}
    return "pass", {"tested": tested}


def _check_lemma19(w, entry, b):
    return lemma19_check(w, b.ell_max)


def _check_lemma22(w, entry, b):
    if len(w.alphabet) != 3:
        return "skipped", {"reason": "not ternary"}
    n_top = min(b.n_max, w.length)
    rng = random.Random(f"{b.seed}:{entry.label}:22")
    detail = {}
    bal = balance_profile(w, n_top)
    for i, kept in enumerate(w.alphabet.symbols[1:], start=1):
        spec = DecoloringSpec(kept)
        points = {0, w.length, *(rng.randint(0, w.length) for _ in range(50))}
        bad = [n for n in sorted(points) if not verify_decolored_counts(w, spec, n)]
        if bad:
            return "fail", {"counterexample": {"kept": kept, "n": bad[0]}}
        image = decolor(w, spec)
        image_dev = balance_profile(image, n_top).per_letter_max()
        if bal.max_deviation(i) <= 1 and max(image_dev) > 1:
            return "fail", {"counterexample": {"kept": kept, "image_deviation": list(image_dev)}}
        diag = sturmian_diagnostic(image, n_top)
        detail[kept] = {"kept_letter_balanced": bal.max_deviation(i) <= 1, "diagnostic": diag.verdict}
    return "pass", detail


def _check_periodicity(w, entry, b):
    v = entry.spec.variant
    reference = generate(entry.spec.with_length(w.length))
    if reference != w:
        pos = int(np.flatnonzero(reference.data != w.data)[0]) if reference.length == w.length else 0
        return "fail", {"counterexample": {"position": pos, "reason": "differs from generator output"}}
    period = None
    if isinstance(v, Periodic):
        period = len(v.pattern)
    elif isinstance(v, (RotationBinary, RotationTernary)) and v.alpha.is_rational:
        period = v.alpha.as_fraction().denominator
    if period is None:
        return "pass", {"generator_consistent": True}
    bad = np.flatnonzero(w.data[period:] != w.data[:-period]) if period < w.length else []
    if len(bad):
        return "fail", {"counterexample": {"period": period, "position": int(bad[0])}}
    return "pass", {"generator_consistent": True, "period": period}


_CHECKS = {
    "eq4": _check_eq4,
    "lemma10": _check_lemma10,
    "lemma16": _check_lemma16,
    "lemma19": _check_lemma19,
    "lemma22": _check_lemma22,
    "periodicity": _check_periodicity,
}


def run_lemma_suite(
    corpus: Sequence[Union[WordGeneratorSpec, CorpusEntry]],
    bounds: SuiteBounds = SuiteBounds(),
    suites: Iterable[str] = SUITES,
) -> SuiteReport:
    """Run each selected check on each corpus word; failures are recorded, never raised."""
    suites = list(suites)
    unknown = [s for s in suites if s not in _CHECKS]
    if unknown:
        raise InvalidParameter(f"unknown suites {unknown}")
    if not corpus:
        raise InvalidParameter("corpus is empty")
    results = []
    for item in corpus:
        entry = item if isinstance(item, CorpusEntry) else CorpusEntry(item)
        w = entry.materialize()
        for name in suites:
            try:
                status, detail = _CHECKS[name](w, entry, bounds)
            except WordlabError as exc:
                status, detail = "fail", {"error": type(exc).__name__, "message": str(exc)}
            results.append(CheckResult(entry.label, name, status, detail))
    return SuiteReport(results, bounds)


def corrupt(w: FiniteWord, position: int) -> FiniteWord:
    """Copy of ``w`` with the symbol at ``position`` replaced by the next letter of its alphabet."""
    data = np.array(w.data, copy=True)
    data[position] = (data[position] + 1) % len(w.alphabet)
    return FiniteWord(w.alphabet, data)
