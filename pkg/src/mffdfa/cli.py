"""Operator-facing entry point.

Subcommands:

* ``analyze``  -- run one series through profile -> segmentation ->
  detrending -> fluctuation -> spectrum and serialize the results;
* ``generate`` -- write synthetic fGn/fBm or binomial-cascade series;
* ``sweep-m``  -- repeat the analysis over a range of detrending orders m
  for both the classical (k=1) and the overlapping variant, emitting an
  H(m) / Delta_alpha(m) table;
* ``oracle``   -- tabulate the analytic cascade spectrum.

Input files are plain CSV, one value per line, '#' comments allowed; an
optional second column is ignored with a warning.  Output is JSON by
default (top-level keys: config, hurst, spectrum, delta_alpha,
diagnostics) or a flat CSV table with --format csv.  Exit codes: 0 on
success, 2 for input errors, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass

import numpy as np

from .detrend import FixedPolynomial, FlexibleBasis
from .errors import InputError, NumericalError
from .fluctuation import FluctuationSurface, default_q_grid, fluctuation_function
from .generators import CascadeSpec, FbmSpec, cascade_oracle, generate_cascade, generate_fgn
from .segmentation import default_scale_grid
from .signal import as_series, build_profile, log_returns
from .spectrum import GeneralizedHurst, SingularitySpectrum, fit_hurst, legendre_transform

METHODS = ("mfdfa", "mfdfa_overlap", "mffdfa")


@dataclass(frozen=True)
class AnalysisConfig:
    """Fully specified analysis request; every field has a usable default."""

    method: str = "mffdfa"
    m: int = 2
    k: int = 2
    q_min: float = -10.0
    q_max: float = 10.0
    q_step: float = 0.2
    s_min: int = 30
    s_max: int | None = None          # None -> floor(N/10) at run time
    n_scales: int = 30
    abscissa: str = "raw"
    seed: int = 0
    fit_lo: int | None = None         # optional narrowing of the scaling fit
    fit_hi: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise InputError(f"unknown method {self.method!r}; pick one of {METHODS}")
        if self.abscissa not in ("raw", "normalized"):
            raise InputError(f"abscissa must be 'raw' or 'normalized', got {self.abscissa!r}")

    def effective_k(self) -> int:
        return 1 if self.method == "mfdfa" else self.k

    def policy(self):
        if self.method == "mffdfa":
            return FlexibleBasis(abscissa=self.abscissa)
        return FixedPolynomial(m=self.m, abscissa=self.abscissa)

    def resolved(self, N: int) -> dict:
        out = dataclasses.asdict(self)
        out["s_max"] = self.s_max if self.s_max is not None else N // 10
        out["k"] = self.effective_k()
        out["N"] = N
        return out

    def fit_range(self):
        if self.fit_lo is None and self.fit_hi is None:
            return None
        return (self.fit_lo if self.fit_lo is not None else 0,
                self.fit_hi if self.fit_hi is not None else np.inf)


@dataclass(frozen=True)
class ResultDocument:
    """Everything one analysis produced, ready for serialization."""

    config: dict
    hurst: GeneralizedHurst
    spectrum: SingularitySpectrum
    surface: FluctuationSurface

    def to_dict(self) -> dict:
        diagnostics = {
            "scales": self.surface.scales.tolist(),
            "segment_counts": self.surface.segment_counts.tolist(),
            "excluded_counts": self.surface.excluded_counts.tolist(),
            "usable_scales": int(self.surface.usable.sum()),
        }
        if self.surface.selection_counts is not None:
            totals = self.surface.selection_counts.sum(axis=0)
            frac = totals / max(int(totals.sum()), 1)
            diagnostics["selection_fractions"] = dict(
                zip(self.surface.basis_names, frac.tolist())
            )
            diagnostics["selection_counts"] = {
                name: col.tolist()
                for name, col in zip(self.surface.basis_names, self.surface.selection_counts.T)
            }
        return {
            "config": self.config,
            "hurst": {
                "q": self.hurst.q_grid.tolist(),
                "h": self.hurst.h.tolist(),
                "intercepts": self.hurst.intercepts.tolist(),
                "fit_r2": self.hurst.fit_r2.tolist(),
            },
            "spectrum": {
                "q": self.spectrum.q_grid.tolist(),
                "alpha": self.spectrum.alpha.tolist(),
                "f_alpha": self.spectrum.f_alpha.tolist(),
                "alpha_at_q0": self.spectrum.alpha_at_q0,
            },
            "delta_alpha": self.spectrum.delta_alpha,
            "diagnostics": diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        """Flat per-q table; scalars ride along as comment headers."""
        lines = [f"# delta_alpha = {self.spectrum.delta_alpha!r}"]
        sel = self.to_dict()["diagnostics"].get("selection_fractions")
        if sel:
            lines.append("# selection_fractions: "
                         + " ".join(f"{k}={v:.6f}" for k, v in sel.items()))
        lines.append("q,h,intercept,fit_r2,alpha,f_alpha")
        for i, qq in enumerate(self.hurst.q_grid):
            lines.append(",".join(repr(float(v)) for v in (
                qq, self.hurst.h[i], self.hurst.intercepts[i],
                self.hurst.fit_r2[i], self.spectrum.alpha[i], self.spectrum.f_alpha[i],
            )))
        return "\n".join(lines) + "\n"


def analyze_series(x, config: AnalysisConfig) -> ResultDocument:
    """Library-level pipeline behind the ``analyze`` subcommand."""
    x = as_series(x)
    if np.ptp(x) == 0.0:
        raise NumericalError("degenerate series: zero variance")
    profile = build_profile(x)
    scales = default_scale_grid(x.size, config.s_min,
                                config.s_max if config.s_max is not None else x.size // 10,
                                config.n_scales)
    q = default_q_grid(config.q_min, config.q_max, config.q_step)
    surface = fluctuation_function(profile, scales, config.effective_k(), config.policy(), q)
    hurst = fit_hurst(surface, s_range=config.fit_range())
    spec = legendre_transform(hurst)
    return ResultDocument(config=config.resolved(x.size), hurst=hurst,
                          spectrum=spec, surface=surface)


def read_series(path: str) -> np.ndarray:
    """One float per line; '#' lines skipped; 2nd column tolerated with a warning."""
    values = []
    warned = False
    try:
        fh = open(path, "r")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    with fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.replace(",", " ").split()
            if len(parts) > 1 and not warned:
                print(f"warning: {path}:{lineno}: extra columns ignored", file=sys.stderr)
                warned = True
            try:
                values.append(float(parts[0]))
            except ValueError:
                raise InputError(f"{path}:{lineno}: not a number: {parts[0]!r}") from None
    if not values:
        raise InputError(f"{path}: no data lines")
    return np.asarray(values)


def drop_overnight_returns(returns: np.ndarray, session_length: int) -> np.ndarray:
    """Remove returns that straddle a session boundary.

    With prices sampled session_length per session, return i (from price i
    to i+1) crosses a boundary iff (i+1) % session_length == 0.
    """
    if session_length < 2:
        raise InputError(f"session length must be >= 2, got {session_length}")
    i = np.arange(returns.size)
    return returns[(i + 1) % session_length != 0]


def _load_preprocessed(args) -> np.ndarray:
    x = read_series(args.input)
    if getattr(args, "drop_overnight", False) and not args.log_returns:
        raise InputError("--drop-overnight only makes sense with --log-returns")
    if getattr(args, "log_returns", False):
        x = log_returns(x)
        if getattr(args, "drop_overnight", False):
            if args.session_length is None:
                raise InputError("--drop-overnight requires --session-length")
            x = drop_overnight_returns(x, args.session_length)
    return x


def _emit(text: str, output: str | None):
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    x = _load_preprocessed(args)
    doc = analyze_series(x, _config_from_args(args))
    _emit(doc.to_csv() if args.format == "csv" else doc.to_json() + "\n", args.output)
    return 0


def cmd_generate(args) -> int:
    if args.kind in ("fgn", "fbm"):
        if args.hurst is None or args.length is None:
            raise InputError(f"generate {args.kind} requires --hurst and --length")
        spec = FbmSpec(hurst=args.hurst, length=args.length, seed=args.seed,
                       output="path" if args.kind == "fbm" else "increments")
        series = generate_fgn(spec)
        header = (f"mffdfa generate kind={args.kind} hurst={args.hurst!r} "
                  f"length={args.length} seed={args.seed}")
    else:
        if args.a is None or args.n_max is None:
            raise InputError("generate cascade requires --a and --n-max")
        series = generate_cascade(CascadeSpec(a=args.a, n_max=args.n_max))
        header = f"mffdfa generate kind=cascade a={args.a!r} n_max={args.n_max}"
    body = "\n".join(repr(float(v)) for v in series)
    _emit(f"# {header}\n{body}\n", args.output)
    return 0


def cmd_sweep_m(args) -> int:
    x = _load_preprocessed(args)
    base = _config_from_args(args)
    if not (1 <= args.m_min <= args.m_max <= 10):
        raise InputError(f"m sweep range [{args.m_min}, {args.m_max}] outside [1, 10]")
    rows = []
    for m in range(args.m_min, args.m_max + 1):
        for method in ("mfdfa", "mfdfa_overlap"):
            cfg = dataclasses.replace(base, method=method, m=m)
            doc = analyze_series(x, cfg)
            i2 = int(np.argmin(np.abs(doc.hurst.q_grid - 2.0)))
            rows.append({
                "m": m, "method": method, "k": cfg.effective_k(),
                "H": float(doc.hurst.h[i2]),
                "delta_alpha": float(doc.spectrum.delta_alpha),
            })
    if args.format == "csv":
        lines = ["m,method,k,H,delta_alpha"]
        lines += [f"{r['m']},{r['method']},{r['k']},{r['H']!r},{r['delta_alpha']!r}"
                  for r in rows]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit(json.dumps({"config": base.resolved(x.size), "sweep": rows}, indent=2) + "\n",
              args.output)
    return 0


def cmd_oracle(args) -> int:
    oracle = cascade_oracle(args.a)
    q = default_q_grid(args.q_min, args.q_max, args.q_step)
    cols = np.column_stack([q, oracle.tau(q), oracle.alpha(q), oracle.f_alpha(q), oracle.h(q)])
    if args.format == "csv":
        lines = [f"# cascade oracle a={args.a!r}", "q,tau,alpha,f_alpha,h"]
        lines += [",".join(repr(v) for v in row) for row in cols.tolist()]
        _emit("\n".join(lines) + "\n", args.output)
    else:
        _emit(json.dumps({
            "a": args.a,
            "table": {name: cols[:, j].tolist()
                      for j, name in enumerate(("q", "tau", "alpha", "f_alpha", "h"))},
        }, indent=2) + "\n", args.output)
    return 0


_CONFIG_FIELDS = ("method", "m", "k", "q_min", "q_max", "q_step",
                  "s_min", "s_max", "n_scales", "abscissa", "seed",
                  "fit_lo", "fit_hi")


def _config_from_args(args) -> AnalysisConfig:
    """CLI flags > config file > dataclass defaults."""
    merged = {}
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read config file {args.config}: {e}") from None
        unknown = set(file_cfg) - set(_CONFIG_FIELDS)
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_cfg)
    for name in _CONFIG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            merged[name] = value
    return AnalysisConfig(**merged)


def _add_analysis_flags(p: argparse.ArgumentParser):
    # default=None everywhere so the config-file / dataclass defaults can
    # tell whether a flag was actually given
    p.add_argument("--config", help="JSON file with AnalysisConfig fields")
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--m", type=int, help="fixed detrending order (mfdfa/mfdfa_overlap)")
    p.add_argument("--k", type=int, help="overlap factor (stride = floor(s/k))")
    p.add_argument("--q-min", dest="q_min", type=float)
    p.add_argument("--q-max", dest="q_max", type=float)
    p.add_argument("--q-step", dest="q_step", type=float)
    p.add_argument("--s-min", dest="s_min", type=int)
    p.add_argument("--s-max", dest="s_max", type=int)
    p.add_argument("--n-scales", dest="n_scales", type=int)
    p.add_argument("--abscissa", choices=("raw", "normalized"))
    p.add_argument("--seed", type=int)
    p.add_argument("--fit-lo", dest="fit_lo", type=int,
                   help="lower scale bound for the h(q) regression")
    p.add_argument("--fit-hi", dest="fit_hi", type=int,
                   help="upper scale bound for the h(q) regression")
    p.add_argument("--log-returns", action="store_true",
                   help="treat the input as prices and analyze log returns")
    p.add_argument("--drop-overnight", action="store_true",
                   help="drop returns crossing session boundaries (needs --session-length)")
    p.add_argument("--session-length", dest="session_length", type=int)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mffdfa",
        description="Multifractal (flexibly) detrended fluctuation analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one series file")
    p.add_argument("input")
    _add_analysis_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="write a synthetic series")
    p.add_argument("kind", choices=("fgn", "fbm", "cascade"))
    p.add_argument("--hurst", type=float)
    p.add_argument("--length", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a", type=float)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("sweep-m", help="H(m) and width tables over detrending orders")
    p.add_argument("input")
    p.add_argument("--m-min", dest="m_min", type=int, default=1)
    p.add_argument("--m-max", dest="m_max", type=int, default=10)
    _add_analysis_flags(p)
    p.set_defaults(func=cmd_sweep_m)

    p = sub.add_parser("oracle", help="tabulate the analytic cascade spectrum")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--q-min", dest="q_min", type=float, default=-10.0)
    p.add_argument("--q-max", dest="q_max", type=float, default=10.0)
    p.add_argument("--q-step", dest="q_step", type=float, default=0.2)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: input: {e}", file=sys.stderr)
        return 2
    except NumericalError as e:
        print(f"error: numerical: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
