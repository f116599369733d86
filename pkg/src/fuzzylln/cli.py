"""Command-line driver: ``fuzzylln {study,check-model,diagnose} --config PATH``.

Exit codes: 0 success, 1 usage or config error, 2 the checked property
failed (no convergence / flagged covariances), 3 decomposition bound
violated.

The config is ``key = value`` lines grouped under ``[section]`` headers
(``#`` starts a comment)::

    [model]
    kind = cosine-center
    grid_size = 101

    [study]
    schedule = 10, 100, 1000, 10000
    eps = 0.1
    replications = 500
    master_seed = 20240601
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from fuzzylln import fuzzy, lln, models
from fuzzylln.intervals import Direction

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_BOUND = 0, 1, 2, 3


class ConfigError(Exception):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno else ""
        super().__init__(prefix + message)


@dataclass
class RawConfig:
    """Parsed ``[section]`` -> ``{key: (value, lineno)}`` mapping."""

    sections: dict = field(default_factory=dict)
    header_lines: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "RawConfig":
        cfg = cls()
        current = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("["):
                if not line.endswith("]") or len(line) < 3:
                    raise ConfigError(f"malformed section header {raw.strip()!r}", lineno)
                current = line[1:-1].strip()
                if current in cfg.sections:
                    raise ConfigError(f"duplicate section [{current}]", lineno)
                cfg.sections[current] = {}
                cfg.header_lines[current] = lineno
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
            if current is None:
                raise ConfigError("key outside of any [section]", lineno)
            key = key.strip()
            if key in cfg.sections[current]:
                raise ConfigError(f"duplicate key {key!r}", lineno)
            cfg.sections[current][key] = (value.strip(), lineno)
        return cfg

    def get(self, section, key, conv=str, default=None, required=False):
        entry = self.sections.get(section, {}).get(key)
        if entry is None:
            if required:
                where = self.header_lines.get(section)
                raise ConfigError(f"missing required key {key!r} in [{section}]", where)
            return default
        value, lineno = entry
        try:
            return conv(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad value for {section}.{key}: {exc}", lineno) from None

    def lineno(self, section, key):
        entry = self.sections.get(section, {}).get(key)
        return entry[1] if entry else self.header_lines.get(section)


def _int_list(text):
    return [int(x) for x in text.replace(",", " ").split()]


@dataclass
class ExperimentConfig:
    model: models.ModelSpec
    schedule: list
    eps: float
    replications: int
    master_seed: int
    workers: int = 1
    target: float = 0.02
    factor: float = 5.0
    z: float = 4.0
    max_k: int = 6
    n_draws: int = 10_000
    alpha_points: int = 5
    diagnose_n: int = 100
    diagnose_eps: float = 0.1
    outputs: dict = field(default_factory=dict)

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        raw = RawConfig.parse(text)
        if "model" not in raw.sections:
            raise ConfigError("missing [model] section")
        kind = raw.get("model", "kind", required=True)
        try:
            model = models.ModelSpec(
                kind=kind,
                center=raw.get("model", "center", float, 0.0),
                left=raw.get("model", "left", float, 1.0),
                right=raw.get("model", "right", float, 1.0),
                w0=raw.get("model", "w0", float, 1.0),
                beta0=raw.get("model", "beta0", float, 0.5),
                noise=raw.get("model", "noise", float, 1.0),
                grid_size=raw.get("model", "grid_size", int, fuzzy.DEFAULT_KNOTS),
            )
        except ValueError as exc:
            raise ConfigError(str(exc), raw.lineno("model", "kind")) from None

        schedule = raw.get("study", "schedule", _int_list, [10, 100, 1000, 10000])
        if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
            raise ConfigError("schedule must be strictly increasing positive integers",
                              raw.lineno("study", "schedule"))
        eps = raw.get("study", "eps", float, 0.1)
        if not eps > 0:
            raise ConfigError("eps must be positive", raw.lineno("study", "eps"))
        reps = raw.get("study", "replications", int, 500)
        if reps < 1:
            raise ConfigError("replications must be at least 1", raw.lineno("study", "replications"))
        outputs = {
            "study_csv": raw.get("output", "study_csv", str, "study.csv"),
            "plot_data": raw.get("output", "plot_data", str, "study_plot.dat"),
            "distance_data": raw.get("output", "distance_data", str, "distance_plot.dat"),
            "cov_csv": raw.get("output", "cov_csv", str, "cov_report.csv"),
            "variance_data": raw.get("output", "variance_data", str, "variance_condition.dat"),
        }
        cfg = cls(
            model=model,
            schedule=schedule,
            eps=eps,
            replications=reps,
            master_seed=raw.get("study", "master_seed", int, 0),
            workers=raw.get("study", "workers", int, 1),
            target=raw.get("study", "target", float, 0.02),
            factor=raw.get("study", "factor", float, 5.0),
            z=raw.get("check", "z", float, 4.0),
            max_k=raw.get("check", "max_k", int, 6),
            n_draws=raw.get("check", "n_draws", int, 10_000),
            alpha_points=raw.get("check", "alpha_points", int, 5),
            diagnose_n=raw.get("diagnose", "n", int, 100),
            diagnose_eps=raw.get("diagnose", "eps", float, eps),
            outputs=outputs,
        )
        if cfg.max_k < 2:
            raise ConfigError("max_k must be at least 2", raw.lineno("check", "max_k"))
        if cfg.n_draws < 30:
            raise ConfigError("n_draws must be at least 30", raw.lineno("check", "n_draws"))
        if cfg.alpha_points < 2:
            raise ConfigError("alpha_points must be at least 2", raw.lineno("check", "alpha_points"))
        return cfg

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        return cls.from_text(text)


def _say(args, msg):
    if not args.quiet:
        print(msg)


def cmd_study(cfg: ExperimentConfig, out: Path, args) -> int:
    result = lln.convergence_study(cfg.model, cfg.schedule, cfg.eps, cfg.replications,
                                   cfg.master_seed, workers=cfg.workers)
    result.to_csv(out / cfg.outputs["study_csv"])
    result.write_plot_data(out / cfg.outputs["plot_data"])
    result.write_distance_data(out / cfg.outputs["distance_data"])
    for r in result.rows:
        oracle = "" if r.oracle_tail is None else f" oracle={r.oracle_tail:.4f}"
        _say(args, f"n={r.n:>7d} p_hat={r.p_hat:.4f} [{r.ci_lo:.4f}, {r.ci_hi:.4f}] "
                   f"mean_d={r.mean_distance:.5f} chebyshev={r.chebyshev_bound:.4g}{oracle}")
    ok = result.converged(cfg.target, cfg.factor)
    _say(args, "converged" if ok else "NOT converged")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_check_model(cfg: ExperimentConfig, out: Path, args) -> int:
    grid = fuzzy.uniform_grid(cfg.alpha_points)
    reports = models.uncorrelatedness_report(cfg.model, cfg.max_k, grid, cfg.n_draws,
                                             cfg.master_seed, z=cfg.z)
    models.write_cov_csv(reports, out / cfg.outputs["cov_csv"])
    with open(out / cfg.outputs["variance_data"], "w") as fh:
        for n in cfg.schedule:
            worst = max(models.variance_condition(cfg.model, n, float(a), d)
                        for a in grid for d in Direction.both())
            fh.write(f"{n} {worst!r}\n")
    flagged = sum(r.flagged for r in reports)
    _say(args, f"{len(reports)} covariance cells, {flagged} flagged at z={cfg.z}")
    return EXIT_OK if flagged == 0 else EXIT_FAILED


def cmd_diagnose(cfg: ExperimentConfig, out: Path, args) -> int:
    n = args.n if args.n is not None else cfg.diagnose_n
    omega = args.seed if args.seed is not None else models.derive_omega(cfg.master_seed, 0)
    u, w = lln.sample_mean_pair(cfg.model, n, omega)
    rep = lln.decompose(u, w, cfg.diagnose_eps)
    (out / "sample_mean.fuzzy").write_text(fuzzy.format_fuzzy(u))
    (out / "expectation_mean.fuzzy").write_text(fuzzy.format_fuzzy(w))
    _say(args, f"distance        {rep.distance!r}")
    _say(args, f"level term      {rep.level_term!r}")
    _say(args, f"right-limit     {rep.right_limit_term!r}")
    _say(args, f"partition term  {rep.partition_term!r}")
    _say(args, f"cuts            {len(rep.cuts)} (dominant: {rep.dominant})")
    if not rep.holds:
        print("decomposition bound violated", file=sys.stderr)
        return EXIT_BOUND
    return EXIT_OK


COMMANDS = {"study": cmd_study, "check-model": cmd_check_model, "diagnose": cmd_diagnose}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fuzzylln", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="experiment config file")
        p.add_argument("--out", default="./out", help="output directory (default ./out)")
        p.add_argument("--quiet", action="store_true")
        if name == "diagnose":
            p.add_argument("--n", type=int, default=None, help="sample size of the trial")
            p.add_argument("--seed", type=int, default=None, help="sample point omega")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = ExperimentConfig.load(args.config)
    except ConfigError as exc:
        print(f"{args.config}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return COMMANDS[args.command](cfg, out, args)


if __name__ == "__main__":
    sys.exit(main())
