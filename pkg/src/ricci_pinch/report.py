"""Topological conclusions, orchestration of checks, and rendering.

A pinching verdict at level k constrains integral homology.  A strict
verdict forces a vanishing band of homology groups; a non-strict verdict
leaves two alternatives, carrying either the vanishing band or a nonzero
middle group plus a Dupin normal.  At the extreme levels k = n/2 (n even)
and k = (n-1)/2 (n odd) the alternatives sharpen to explicit model spaces.

Reports are plain dictionaries rendered to canonical JSON (sorted keys,
17-significant-digit reals, byte-stable for a fixed config and seed) or to
markdown tables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import catalog as cat
from .curvature import (
    PinchingParams,
    ShapeOperatorSet,
    mean_curvature,
    pinch_bound,
    pinch_scalars,
    ricci_min,
    shape_bounds_check,
)
from .lawson_simons import ls_max, ls_oracle
from .tube import (
    BUILTIN_PATCHES,
    LambdaTangent,
    TubePoint,
    build_patch,
    focal_map,
    gauss_orthogonality_residual,
    small_circle_crossing,
    torus_dupin_patch,
    tube_dupin_patch,
    tube_gauss,
    tube_point,
    vertical_shape_check,
)
from .verdict import DupinDetection, PinchVerdict, check_pinching, dupin_detect, max_pinch_k

PACKAGE_VERSION = "0.1.0"


class ConfigError(ValueError):
    """Configuration document rejected; message carries the field path."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


# ---------------------------------------------------------------------------
# Homology conclusions


def _superscript(value: int) -> str:
    digits = {"0": "⁰", "1": "¹", "2": "²", "3": "³", "4": "⁴",
              "5": "⁵", "6": "⁶", "7": "⁷", "8": "⁸", "9": "⁹"}
    return "".join(digits[c] for c in str(value))


@dataclass(frozen=True)
class TopologyReport:
    """One topological alternative: a case tag, an explicit homology table
    over degrees 0..n, and free-form notes."""

    case: str
    homology: tuple[tuple[int, str], ...]
    notes: tuple[str, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "homology": [[d, g] for d, g in self.homology],
            "notes": list(self.notes),
        }


def _table(n: int, groups: dict[int, str], default: str = "0") -> tuple[tuple[int, str], ...]:
    return tuple((i, groups.get(i, default)) for i in range(n + 1))


def _sphere_table(n: int) -> tuple[tuple[int, str], ...]:
    return _table(n, {0: "Z", n: "Z"})


def _vanishing_band_report(n: int, k: int, strict: bool) -> TopologyReport:
    groups = {0: "Z", n: "Z"}
    for i in range(1, k + 1):
        groups[i] = "0"
        groups[n - i] = "0"
    notes = ["homology vanishes in degrees 1..k and n-k..n-1"]
    if 2 * k < n:
        groups[n - k - 1] = f"Z^b_{k + 1}"
        notes.append(f"degree {n - k - 1} is free of rank equal to the Betti number b_{k + 1}")
        for i in range(k + 1, n - k - 1):
            groups.setdefault(i, "unconstrained")
    if strict:
        notes.append("strictness forces this case")
    return TopologyReport(case="homology-vanishing", homology=_table(n, groups, "unconstrained"), notes=tuple(notes))


def _middle_class_report(n: int, k: int, dupin: DupinDetection | None) -> TopologyReport:
    groups = {0: "Z", n: "Z", k: "nonzero", n - k: f"Z^b_{k}"}
    for i in range(1, k):
        groups[i] = "0"
        groups[n - i] = "0"
    for i in range(k + 1, n - k):
        groups.setdefault(i, "unconstrained")
    window = f"{k} <= l <= {n - k - 1}" if 2 * k < n else f"l = {k}"
    notes = [
        f"degree {k} homology is nonzero and degree {n - k} is free",
        f"a Dupin principal normal of norm equal to the upper shape bound exists;"
        f" multiplicity window {window}",
        "for k = 2 the Dupin normal requires nonvanishing mean curvature everywhere",
    ]
    if dupin is not None:
        notes.append(
            f"detected Dupin normal: norm {dupin.norm:.12g}, multiplicity {dupin.multiplicity}"
        )
    return TopologyReport(case="homology-middle", homology=_table(n, groups, "unconstrained"), notes=tuple(notes))


def _even_extremal_reports(n: int, strict: bool) -> list[TopologyReport]:
    sphere = TopologyReport(
        case="even-extremal-sphere",
        homology=_sphere_table(n),
        notes=(
            f"M is homeomorphic to S^n (n = {n})"
            + ("; strictness forces this case" if strict else ""),
        ),
    )
    if strict:
        return [sphere]
    half = n // 2
    torus = TopologyReport(
        case="even-extremal-torus",
        homology=_table(n, {0: "Z", half: "Z^2", n: "Z"}),
        notes=(
            f"minimal product of spheres S{_superscript(half)}(1/√2) x "
            f"S{_superscript(half)}(1/√2) in the (n+1)-sphere",
        ),
    )
    reports = [sphere, torus]
    if n == 4:
        reports.append(
            TopologyReport(
                case="even-extremal-projective",
                homology=_table(4, {0: "Z", 2: "Z", 4: "Z"}),
                notes=("minimal embedding of the complex projective plane into S⁷",),
            )
        )
    return reports


def _odd_extremal_reports(
    n: int, strict: bool, mean_nonzero_everywhere: bool
) -> list[TopologyReport]:
    k = (n - 1) // 2
    sphere = TopologyReport(
        case="odd-extremal-sphere",
        homology=_sphere_table(n),
        notes=(
            f"M is homeomorphic to S^n (n = {n})"
            + ("; strictness forces this case" if strict else ""),
        ),
    )
    if strict:
        return [sphere]
    if n == 5 and not mean_nonzero_everywhere:
        return [
            sphere,
            TopologyReport(
                case="odd-extremal-bundle-product",
                homology=_table(n, {0: "Z", k: "Z", k + 1: "Z", n: "Z"}),
                notes=(
                    "bundle alternative requires nonvanishing mean curvature"
                    " everywhere (not certified by the configuration)",
                ),
            ),
        ]
    base_note = (
        f"sphere bundle S{_superscript(k)} -> E -> L{_superscript(k + 1)}"
        f" with base homeomorphic to S{_superscript(k + 1)}"
    )
    product_notes = [base_note, f"homology of S{_superscript(k)} x S{_superscript(k + 1)}"]
    if n % 4 == 1:
        product_notes.append(f"necessarily this homology for n = {n} = 4r+1")
    if n == 5:
        product_notes.append("M is homeomorphic to S²×S³")
    if n == 13:
        product_notes.append("M is homeomorphic to S⁶×S⁷")
    product = TopologyReport(
        case="odd-extremal-bundle-product",
        homology=_table(n, {0: "Z", k: "Z", k + 1: "Z", n: "Z"}),
        notes=tuple(product_notes),
    )
    reports = [sphere, product]
    if n % 4 != 1:
        reports.append(
            TopologyReport(
                case="odd-extremal-bundle-torsion",
                homology=_table(n, {0: "Z", k: "Z_q (q > 1)", n: "Z"}),
                notes=(base_note, f"degree {k} homology is a nontrivial finite cyclic group"),
            )
        )
    return reports


def homology_conclusion(
    n: int,
    k: int,
    verdict: PinchVerdict,
    dupin: DupinDetection | None = None,
    mean_nonzero_everywhere: bool = False,
) -> list[TopologyReport]:
    """Topological alternatives implied by a pinching verdict at level k.

    Strictness selects the vanishing-band (or sphere) case outright; a
    non-strict verdict yields every alternative.  At the extreme levels the
    alternatives are the explicit model spaces.
    """
    PinchingParams(n, k)
    if not verdict.holds:
        return [
            TopologyReport(
                case="hypothesis-not-satisfied",
                homology=_table(n, {0: "Z", n: "Z"}, "unconstrained"),
                notes=("the pinching hypothesis does not hold at this level",),
            )
        ]
    strict = verdict.strict
    if n % 2 == 0 and 2 * k == n:
        return _even_extremal_reports(n, strict)
    if n % 2 == 1 and 2 * k == n - 1 and n >= 5:
        return _odd_extremal_reports(n, strict, mean_nonzero_everywhere)
    if strict:
        return [_vanishing_band_report(n, k, strict=True)]
    return [_vanishing_band_report(n, k, strict=False), _middle_class_report(n, k, dupin)]


# ---------------------------------------------------------------------------
# Canonical JSON


def _format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports must not contain NaN or infinite values")
    text = format(x, ".17g")
    return text


def dumps_canonical(obj) -> str:
    """Canonical JSON: sorted keys, 17-significant-digit reals, no spaces
    beyond the conventional separators.  Byte-stable for identical input."""
    pieces: list[str] = []

    def emit(value):
        if isinstance(value, dict):
            pieces.append("{")
            for idx, key in enumerate(sorted(value)):
                if idx:
                    pieces.append(", ")
                if not isinstance(key, str):
                    raise ValueError("object keys must be strings")
                pieces.append(f'"{_escape(key)}": ')
                emit(value[key])
            pieces.append("}")
        elif isinstance(value, (list, tuple)):
            pieces.append("[")
            for idx, item in enumerate(value):
                if idx:
                    pieces.append(", ")
                emit(item)
            pieces.append("]")
        elif isinstance(value, bool) or isinstance(value, np.bool_):
            pieces.append("true" if value else "false")
        elif value is None:
            pieces.append("null")
        elif isinstance(value, (int, np.integer)):
            pieces.append(str(int(value)))
        elif isinstance(value, (float, np.floating)):
            pieces.append(_format_float(float(value)))
        elif isinstance(value, str):
            pieces.append(f'"{_escape(value)}"')
        elif isinstance(value, np.ndarray):
            emit(value.tolist())
        else:
            raise ValueError(f"cannot serialize value of type {type(value)!r}")

    emit(obj)
    return "".join(pieces)


def _escape(text: str) -> str:
    out = []
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


# ---------------------------------------------------------------------------
# Config-driven runs

KNOWN_OPERATOR_CHECKS = ("star", "max-k", "ls-max", "dupin", "bounds", "homology")
KNOWN_PATCH_CHECKS = (
    "unit-closure",
    "gauss-orthogonality",
    "vertical-shape",
    "p-endomorphism",
    "regularity-crossing",
    "focal-roundtrip",
)
KNOWN_TOP_KEYS = {
    "entry", "operators", "patch", "checks", "k", "p", "r2", "n", "seed",
    "restarts", "expect", "h_nonzero_everywhere", "tau", "a", "ell", "d",
    "label", "samples",
}


def _resolve_target(config: dict):
    """Returns (ShapeOperatorSet | CatalogEntry-with-analytic-data, label)."""
    if "operators" in config:
        try:
            return ShapeOperatorSet.from_json_dict(config["operators"]), config["operators"].get(
                "label", "inline"
            )
        except (ValueError, TypeError, KeyError) as exc:
            raise ConfigError("operators", str(exc)) from exc
    label = config["entry"]
    if label == "clifford-torus":
        for key in ("n", "p", "r2"):
            if key not in config:
                raise ConfigError(key, "clifford-torus entries require n, p and r2")
        entry = cat.clifford_torus(int(config["n"]), int(config["p"]), math.sqrt(float(config["r2"])))
        return entry.data, entry.label
    try:
        entry = cat.catalog_entry(label)
    except KeyError as exc:
        raise ConfigError("entry", str(exc.args[0])) from exc
    if isinstance(entry.data, ShapeOperatorSet):
        return entry.data, entry.label
    return entry, entry.label


def _resolve_operators(config: dict) -> tuple[ShapeOperatorSet, str]:
    target, label = _resolve_target(config)
    if not isinstance(target, ShapeOperatorSet):
        raise ConfigError("entry", f"catalog entry {label!r} carries analytic data only")
    return target, label


def _analytic_checks(config: dict, entry: cat.CatalogEntry) -> dict:
    """Checks for entries that store closed-form Ricci data instead of
    operators: the threshold comparison, the analytic maximal level, and the
    stored homology table."""
    checks = config.get("checks", ["star"])
    desc = entry.data
    results: dict = {"ricci_min": desc.ricci_min, "ricci_min_attained": desc.attained}
    k = config.get("k")
    for idx, check in enumerate(checks):
        if check in ("star", "pinch"):
            if k is None:
                raise ConfigError("k", "the threshold comparison requires a level k")
            bound = pinch_bound(PinchingParams(desc.n, int(k), desc.H))
            from .curvature import equality_tol

            eps = equality_tol(bound)
            holds = desc.ricci_min >= bound - eps
            at_bound = abs(desc.ricci_min - bound) < eps
            results["star"] = {
                "k": int(k),
                "holds": bool(holds),
                "strict": bool(holds and (not desc.attained or not at_bound)),
                "b": bound,
                "ricci_min": desc.ricci_min,
            }
        elif check == "max-k":
            results["max-k"] = {"max_k": cat.analytic_max_k(desc)}
        elif check == "homology":
            if entry.expected_homology is None:
                raise ConfigError("checks", f"entry {entry.label!r} has no stored homology")
            results["homology-table"] = [[d, g] for d, g in entry.expected_homology]
        else:
            raise ConfigError(
                f"checks[{idx}]",
                f"check {check!r} is not available for analytic entries"
                " (known: star, max-k, homology)",
            )
    return results


def _operator_checks(config: dict, ops: ShapeOperatorSet) -> dict:
    checks = config.get("checks", ["star"])
    seed = int(config.get("seed", 0))
    restarts = int(config.get("restarts", 100))
    results: dict = {}
    verdict = None
    k = config.get("k")
    needs_k = any(c in ("star", "dupin", "bounds", "homology") for c in checks)
    if needs_k:
        if k is None:
            raise ConfigError("k", "this combination of checks requires a level k")
        k = int(k)
    for idx, check in enumerate(checks):
        if check in ("star", "pinch"):
            verdict = check_pinching(ops, k)
            results["star"] = verdict.to_json_dict()
        elif check == "max-k":
            results["max-k"] = {"max_k": max_pinch_k(ops)}
        elif check == "ls-max":
            p = int(config.get("p", k if k is not None else 2))
            res = ls_max(ops, p, restarts=restarts, seed=seed)
            results["ls-max"] = {
                "p": p,
                "value": res.value,
                "bound": res.bound,
                "classification": res.classification,
                "converged": res.converged,
            }
        elif check == "dupin":
            det = dupin_detect(ops, k, restarts=restarts, seed=seed)
            results["dupin"] = det.to_json_dict() if det is not None else None
        elif check == "bounds":
            bc = shape_bounds_check(ops, k)
            results["bounds"] = {
                "ok": bc.ok,
                "violations": [
                    {"normal_index": v[0], "eigenvalue": v[1], "side": v[2]}
                    for v in bc.violations
                ],
            }
        elif check == "homology":
            verdict = verdict or check_pinching(ops, k)
            det = dupin_detect(ops, k, restarts=restarts, seed=seed) if not verdict.strict else None
            reports = homology_conclusion(
                ops.n, k, verdict, det,
                mean_nonzero_everywhere=bool(config.get("h_nonzero_everywhere", False)),
            )
            results["homology"] = [r.to_json_dict() for r in reports]
        else:
            raise ConfigError(
                f"checks[{idx}]",
                f"unknown operator check {check!r}; known: {', '.join(KNOWN_OPERATOR_CHECKS)}",
            )
    h = mean_curvature(ops)
    results["mean_curvature"] = h.length
    results["ricci_min"] = ricci_min(ops)
    return results


def _patch_checks(config: dict) -> dict:
    name = config["patch"]
    if name == "clifford-torus":
        checks = config.get("checks", ["focal-roundtrip"])
    else:
        checks = config.get("checks", ["unit-closure"])
    tau = float(config.get("tau", math.pi / 4))
    seed = int(config.get("seed", 0))
    samples = int(config.get("samples", 200))
    rng = np.random.default_rng(seed)
    results: dict = {}
    if name != "clifford-torus":
        try:
            patch = build_patch(name, tau, {k: config[k] for k in ("a", "ell", "d") if k in config})
        except ValueError as exc:
            raise ConfigError("patch", str(exc)) from exc

    def random_point() -> TubePoint:
        x = rng.uniform(0.2, 1.0, size=patch.base_dim)
        w = rng.standard_normal(patch.fiber_dim)
        return TubePoint(x, w / np.linalg.norm(w))

    for idx, check in enumerate(checks):
        if check == "unit-closure":
            worst = 0.0
            for _ in range(samples):
                q = random_point()
                psi, gauss = tube_point(patch, q), tube_gauss(patch, q)
                worst = max(
                    worst,
                    abs(np.linalg.norm(psi) - 1.0),
                    abs(np.linalg.norm(gauss) - 1.0),
                    abs(float(psi @ gauss)),
                )
            results["unit-closure"] = {"max_deviation": worst, "samples": samples}
        elif check == "gauss-orthogonality":
            worst = 0.0
            for _ in range(samples):
                q = random_point()
                v = LambdaTangent(
                    base=rng.standard_normal(patch.base_dim),
                    fiber=_fiber_tangent(rng, q.w),
                )
                worst = max(worst, gauss_orthogonality_residual(patch, q, v))
            results["gauss-orthogonality"] = {"max_residual": worst, "samples": samples}
        elif check == "vertical-shape":
            worst = 0.0
            for _ in range(samples):
                q = random_point()
                fiber = _fiber_tangent(rng, q.w)
                if not np.any(fiber):
                    continue
                worst = max(worst, vertical_shape_check(patch, q, fiber))
            results["vertical-shape"] = {"max_residual": worst, "samples": samples}
        elif check == "p-endomorphism":
            q = random_point()
            from .tube import regularity_endomorphism

            p_mat = regularity_endomorphism(patch, q)
            results["p-endomorphism"] = {
                "det": float(np.linalg.det(p_mat)),
                "matrix": p_mat.tolist(),
            }
        elif check == "regularity-crossing":
            det_root, jac_argmin = small_circle_crossing(tau)
            results["regularity-crossing"] = {
                "det_root": det_root,
                "jacobian_rank_loss": jac_argmin,
                "gap": abs(det_root - jac_argmin),
            }
        elif check == "focal-roundtrip":
            base = build_patch("great-circle-s3", tau)
            dupin = tube_dupin_patch(base)
            fmap = focal_map(dupin, tau)
            worst = 0.0
            for _ in range(samples):
                x = rng.uniform(0.0, 2.0 * math.pi)
                phi = rng.uniform(0.0, 2.0 * math.pi)
                recon = fmap(np.array([x, phi]))
                worst = max(worst, float(np.linalg.norm(recon - base.base(np.array([x])))))
            results["focal-roundtrip"] = {"max_error": worst, "samples": samples}
        else:
            raise ConfigError(
                f"checks[{idx}]",
                f"unknown patch check {check!r}; known: {', '.join(KNOWN_PATCH_CHECKS)}",
            )
    return results


def _fiber_tangent(rng, w: np.ndarray) -> np.ndarray:
    v = rng.standard_normal(len(w))
    v -= float(v @ w) * w
    norm = np.linalg.norm(v)
    return v / norm if norm > 0 else np.zeros_like(v)


def _check_expectations(config: dict, results: dict) -> dict:
    expect = config.get("expect", {})
    mismatches = []
    for key, wanted in sorted(expect.items()):
        if key == "max_k":
            got = results.get("max-k", {}).get("max_k")
            if got != wanted:
                mismatches.append(f"max_k: expected {wanted}, got {got}")
        elif key == "holds":
            got = results.get("star", {}).get("holds")
            if got != wanted:
                mismatches.append(f"holds: expected {wanted}, got {got}")
        elif key == "strict":
            got = results.get("star", {}).get("strict")
            if got != wanted:
                mismatches.append(f"strict: expected {wanted}, got {got}")
        elif key == "classification":
            got = results.get("ls-max", {}).get("classification")
            if got != wanted:
                mismatches.append(f"classification: expected {wanted}, got {got}")
        elif key == "max_residual_lt":
            for name in ("gauss-orthogonality", "vertical-shape", "unit-closure"):
                block = results.get(name)
                if block is None:
                    continue
                got = block.get("max_residual", block.get("max_deviation"))
                if got is not None and got >= wanted:
                    mismatches.append(f"{name}: residual {got} not below {wanted}")
        else:
            raise ConfigError(f"expect.{key}", f"unknown expectation {key!r}")
    return {"ok": not mismatches, "mismatches": mismatches}


def validate_config(config) -> dict:
    if not isinstance(config, dict):
        raise ConfigError("<root>", "configuration must be a JSON object")
    for key in config:
        if key not in KNOWN_TOP_KEYS:
            raise ConfigError(key, "unknown configuration field")
    targets = [key for key in ("entry", "operators", "patch") if key in config]
    if len(targets) != 1:
        raise ConfigError(
            "<root>", "exactly one of 'entry', 'operators' or 'patch' must be given"
        )
    checks = config.get("checks", [])
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise ConfigError("checks", "must be a list of strings")
    return config


def run_config(config: dict) -> dict:
    """Execute the checks requested by a configuration document.

    Deterministic given the config's seed.  Returns a report document ready
    for rendering.
    """
    config = validate_config(config)
    report: dict = {
        "seed": int(config.get("seed", 0)),
        "label": config.get("label", ""),
    }
    if "patch" in config:
        report["patch"] = config["patch"]
        report["results"] = _patch_checks(config)
    else:
        target, label = _resolve_target(config)
        report["entry"] = label
        if isinstance(target, ShapeOperatorSet):
            report["results"] = _operator_checks(config, target)
        else:
            report["results"] = _analytic_checks(config, target)
    if "expect" in config:
        report["expectation"] = _check_expectations(config, report["results"])
    return report


# ---------------------------------------------------------------------------
# Rendering


def render(report: dict, format: str = "json") -> str:
    """Render a report document to canonical JSON or markdown."""
    if format == "json":
        return dumps_canonical(
            {"meta": {"generator": "ricci-pinch", "version": PACKAGE_VERSION}, "report": report}
        )
    if format == "markdown":
        return _render_markdown(report)
    raise ValueError(f"unknown format {format!r}; use 'json' or 'markdown'")


def _md_number(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def _render_markdown(report: dict) -> str:
    lines = []
    title = report.get("entry") or report.get("patch") or report.get("label") or "report"
    lines.append(f"# {title}")
    lines.append("")
    results = report.get("results", {})
    star = results.get("star")
    if star is not None:
        classification = (
            "strict" if star["strict"] else ("equality" if star["holds"] else "fails")
        )
        dupin = results.get("dupin")
        if dupin:
            lines.append("| level | classification | dupin norm | multiplicity |")
            lines.append("|---|---|---|---|")
            lines.append(
                f"| k={star['k']} | {classification} | ‖η‖={_md_number(dupin['norm'])} "
                f"| ℓ={dupin['multiplicity']} |"
            )
        else:
            lines.append("| level | classification | b | min Ricci |")
            lines.append("|---|---|---|---|")
            lines.append(
                f"| k={star['k']} | {classification} | {_md_number(star['b'])} "
                f"| {_md_number(star['ricci_min'])} |"
            )
        lines.append("")
    for name in ("max-k", "ls-max", "bounds"):
        block = results.get(name)
        if block is None:
            continue
        lines.append(f"## {name}")
        lines.append("")
        lines.append("| field | value |")
        lines.append("|---|---|")
        for key in sorted(block):
            lines.append(f"| {key} | {_md_number(block[key])} |")
        lines.append("")
    table = results.get("homology-table")
    if table:
        lines.append("## homology")
        lines.append("")
        z_degrees = [d for d, g in table if g == "Z"]
        if z_degrees:
            lines.append(f"| homology | Z at {', '.join(str(d) for d in z_degrees)} |")
            lines.append("|---|---|")
            lines.append("")
        lines.append("| degree | group |")
        lines.append("|---|---|")
        for d, g in table:
            lines.append(f"| {d} | {g} |")
        lines.append("")
    homology = results.get("homology")
    if homology:
        for alt in homology:
            lines.append(f"## case {alt['case']}")
            lines.append("")
            nonzero = [(d, g) for d, g in alt["homology"] if g not in ("0",)]
            z_degrees = [d for d, g in alt["homology"] if g == "Z"]
            if z_degrees:
                lines.append(f"Z at {', '.join(str(d) for d in z_degrees)}")
                lines.append("")
            lines.append("| degree | group |")
            lines.append("|---|---|")
            for d, g in nonzero:
                lines.append(f"| {d} | {g} |")
            lines.append("")
            for note in alt["notes"]:
                lines.append(f"- {note}")
            lines.append("")
    for name in (
        "unit-closure", "gauss-orthogonality", "vertical-shape",
        "p-endomorphism", "regularity-crossing", "focal-roundtrip",
    ):
        block = results.get(name)
        if block is None:
            continue
        lines.append(f"## {name}")
        lines.append("")
        lines.append("| field | value |")
        lines.append("|---|---|")
        for key in sorted(block):
            lines.append(f"| {key} | {_md_number(block[key])} |")
        lines.append("")
    expectation = report.get("expectation")
    if expectation is not None:
        status = "ok" if expectation["ok"] else "MISMATCH"
        lines.append(f"expectation: {status}")
        for msg in expectation["mismatches"]:
            lines.append(f"- {msg}")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def render_conclusions(n: int, reports: list[TopologyReport]) -> str:
    """Markdown rendering of a list of topological alternatives."""
    lines = [f"# topological conclusions (n = {n})", ""]
    for rep in reports:
        lines.append(f"## case {rep.case}")
        lines.append("")
        z_degrees = [d for d, g in rep.homology if g == "Z"]
        if z_degrees:
            lines.append(f"Z at {', '.join(str(d) for d in z_degrees)}")
            lines.append("")
        lines.append("| degree | group |")
        lines.append("|---|---|")
        for d, g in rep.homology:
            if g != "0":
                lines.append(f"| {d} | {g} |")
        lines.append("")
        for note in rep.notes:
            lines.append(f"- {note}")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
