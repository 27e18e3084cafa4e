"""Gallery items, expected facts and the fact runner."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable

from ..exact import CertifiedInterval, Undecidable, exact_str, is_exact
from ..germs import Unsupported
from ..measures import Measure
from ..preorder import render


@dataclass(frozen=True)
class Fact:
    """A claim checked by calling ``check(measure)``.

    ``check`` returns ``(ok, computed, expected)``; ``computed`` and
    ``expected`` are plain values or short strings for the report.
    """

    name: str
    claim: str
    check: Callable
    ref: str = ""


@dataclass
class GalleryItem:
    id: str
    params: dict
    measure: Measure
    facts: list
    tail: dict = field(default_factory=dict)
    domain: object = "line"
    extra: dict = field(default_factory=dict)

    def with_measure(self, mu: Measure) -> "GalleryItem":
        """Same facts against another measure (for negative controls)."""
        return replace(self, measure=mu)

    def to_json(self):
        from ..serialize import measure_to_json
        return {"id": self.id, "params": {k: _show(v) for k, v in self.params.items()},
                "measure": measure_to_json(self.measure), "tail": {k: _show(v) for k, v in self.tail.items()},
                "facts": [{"name": f.name, "claim": f.claim, "ref": f.ref} for f in self.facts]}


def _show(v):
    if isinstance(v, (list, tuple)):
        return [_show(u) for u in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    if is_exact(v) or isinstance(v, CertifiedInterval):
        return render(v)
    return repr(v)


@dataclass
class FactResult:
    name: str
    claim: str
    passed: bool
    computed: object
    expected: object
    error: str = ""

    def to_json(self):
        return {"name": self.name, "claim": self.claim, "passed": self.passed,
                "computed": _show(self.computed), "expected": _show(self.expected), "error": self.error}


@dataclass
class FactReport:
    item: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list:
        return [r for r in self.results if not r.passed]

    def to_json(self):
        return {"item": self.item, "passed": self.passed, "facts": [r.to_json() for r in self.results]}

    def table(self) -> str:
        w = max([len(r.name) for r in self.results] + [4])
        lines = [f"{self.item}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            mark = "ok  " if r.passed else "FAIL"
            detail = r.error or f"computed={_brief(r.computed)} expected={_brief(r.expected)}"
            lines.append(f"  {mark} {r.name:<{w}}  {detail}")
        return "\n".join(lines)


def _brief(v, limit: int = 60) -> str:
    if isinstance(v, (list, tuple)):
        s = "(" + ", ".join(_brief(u, limit) for u in v) + ")"
    elif is_exact(v):
        s = exact_str(v)
    else:
        s = str(_show(v))
    return s if len(s) <= limit else s[:limit - 3] + "..."


def _run(fact: Fact, mu: Measure) -> FactResult:
    try:
        ok, computed, expected = fact.check(mu)
        return FactResult(fact.name, fact.claim, bool(ok), computed, expected)
    except (Undecidable, Unsupported, ValueError, ArithmeticError, AssertionError, RuntimeError) as e:
        return FactResult(fact.name, fact.claim, False, None, None, f"{type(e).__name__}: {e}")


def verify_expected_facts(item: GalleryItem, workers: int = 1) -> FactReport:
    """Run every fact; failures are collected, never raised.  Order is deterministic."""
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda f: _run(f, item.measure), item.facts))
    else:
        results = [_run(f, item.measure) for f in item.facts]
    return FactReport(item.id, results)


def all_pass(pairs) -> tuple:
    """Fold ``(ok, computed, expected)`` triples; reports the first failure."""
    pairs = list(pairs)
    for ok, c, e in pairs:
        if not ok:
            return False, c, e
    if not pairs:
        return False, "nothing checked", None
    return True, pairs[-1][1], pairs[-1][2]
