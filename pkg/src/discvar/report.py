"""Report models and rendering for pipeline results.

The structured report is a pydantic model dumped to JSON; its field order is the
key order of the document. The text report renders the same model.
"""

from __future__ import annotations

from typing import Literal, Sequence

from pydantic import BaseModel, Field

from discvar.core.fp_oracle import OracleOutcome
from discvar.core.pipeline import DiscriminantVarietyResult
from discvar.core.poly import Polynomial
from discvar.systems.parser import format_polynomial

ReportFormat = Literal["text", "json"]
Verdict = Literal["pass", "fail"]


class ComponentReport(BaseModel):
    status: str = Field(..., description="computed, empty, assumed_empty, user_supplied or skipped.")
    generators: list[str] = Field(default_factory=list, description="Canonical generator strings.")


class OracleReport(BaseModel):
    lemma1: Verdict
    corollary1: Verdict
    primes: list[int] = Field(default_factory=list, description="Primes the checks actually ran over.")
    lemma1_sizes: list[int] = Field(default_factory=list, description="Minor sizes k checked for the first statement.")
    sampling: Verdict = "pass"

    @classmethod
    def from_outcome(cls, outcome: OracleOutcome) -> "OracleReport":
        primes = sorted(set(outcome.lemma1) | set(outcome.corollary1))
        return cls(
            lemma1="pass" if outcome.lemma1_passed else "fail",
            corollary1="pass" if outcome.corollary1_passed else "fail",
            primes=primes,
            lemma1_sizes=list(outcome.ks),
            sampling="pass" if all(outcome.sampling.values()) else "fail",
        )


class DiscriminantVarietyReport(BaseModel):
    delta: int
    saturated_ideal: list[str]
    projection_closure: list[str]
    components: dict[str, ComponentReport]
    discriminant_variety: list[list[str]]
    warnings: list[str] | None = None
    oracle: OracleReport | None = None


def _strings(polys: Sequence[Polynomial]) -> list[str]:
    return [format_polynomial(p) for p in polys]


def build_report(result: DiscriminantVarietyResult, oracle: OracleOutcome | None = None) -> DiscriminantVarietyReport:
    pre = result.preprocess
    return DiscriminantVarietyReport(
        delta=result.delta,
        saturated_ideal=_strings(pre.basis.elements),
        projection_closure=_strings(pre.proj_closure),
        components={
            label.value: ComponentReport(status=c.status.value, generators=_strings(c.generators))
            for label, c in result.components.items()
        },
        discriminant_variety=[_strings(gens) for gens in result.w_d],
        warnings=list(result.warnings) or None,
        oracle=OracleReport.from_outcome(oracle) if oracle is not None else None,
    )


def _block(title: str, lines: list[str]) -> list[str]:
    return [f"{title}:"] + [f"  {line}" for line in lines or ["(none)"]]


def render_text(report: DiscriminantVarietyReport) -> str:
    out = [f"delta: {report.delta}"]
    out += _block("saturated_ideal", report.saturated_ideal)
    out += _block("projection_closure", report.projection_closure)
    out += _block(
        "components",
        [f"{label} = [{', '.join(c.generators)}]  ({c.status})" for label, c in report.components.items()],
    )
    out += _block("discriminant_variety", [f"[{', '.join(gens)}]" for gens in report.discriminant_variety])
    if report.warnings:
        out += _block("warnings", report.warnings)
    if report.oracle is not None:
        o = report.oracle
        out += _block(
            "oracle",
            [
                f"lemma1: {o.lemma1}",
                f"corollary1: {o.corollary1}",
                f"sampling: {o.sampling}",
                f"primes: {', '.join(map(str, o.primes))}",
            ],
        )
    return "\n".join(out) + "\n"


def emit_report(
    result: DiscriminantVarietyResult,
    fmt: ReportFormat = "text",
    oracle: OracleOutcome | None = None,
) -> str:
    report = build_report(result, oracle)
    if fmt == "json":
        return report.model_dump_json(indent=2, exclude_none=True) + "\n"
    return render_text(report)
