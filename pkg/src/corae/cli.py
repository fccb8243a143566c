"""Command-line backend for project management.

    corae create    --project ID --template FILE
    corae stage     --project ID
    corae publish   --project ID
    corae mint-urls --project ID --slots A,B
    corae ingest    --file LOG [--project ID]
    corae aggregate --project ID
    corae analyze   --project ID [--period 0.1]
    corae serve     [--config FILE] [--listen HOST:PORT]

All commands take --data-dir (default ./data). Exit status is nonzero
exactly when a command failed; re-running analyze on unchanged input
produces byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis
from .codec import CodecError, decode_canonical
from .model import ProjectState
from .server import CoraeServer, load_config, parse_listen
from .store import ProjectStore, RejectedLogError, StoreError
from .template import TemplateError, parse_template


class CliError(Exception):
    pass


def _store(args) -> ProjectStore:
    return ProjectStore(args.data_dir)


def cmd_create(args) -> int:
    path = Path(args.template)
    if not path.is_file():
        raise CliError(f"template file not found: {path}")
    try:
        template = parse_template(path.read_text("utf-8"), default_project_id=args.project)
    except TemplateError as exc:
        raise CliError(f"bad template: {exc}") from exc
    if template.project_id != args.project:
        raise CliError(
            f"template names project {template.project_id!r}, --project says {args.project!r}"
        )
    store = _store(args)
    with store.project_lock():
        store.create_project(template)
    print(f"created project {args.project} (draft)")
    return 0


def _transition(args, target: ProjectState) -> int:
    store = _store(args)
    with store.project_lock(args.project):
        template = store.transition(args.project, target)
    print(f"project {args.project} is now {template.state.value}")
    return 0


def cmd_stage(args) -> int:
    return _transition(args, ProjectState.STAGED)


def cmd_publish(args) -> int:
    return _transition(args, ProjectState.PUBLISHED)


def cmd_mint_urls(args) -> int:
    slots = [s.strip() for s in args.slots.split(",") if s.strip()]
    if not slots:
        raise CliError("--slots must name at least one participant slot")
    store = _store(args)
    base = args.base_url.rstrip("/") if args.base_url else ""
    with store.project_lock(args.project):
        for slot in slots:
            record = store.create_session(args.project, slot)
            print(f"{base}{store.session_url(record.token)}")
    return 0


def cmd_ingest(args) -> int:
    path = Path(args.file)
    if not path.is_file():
        raise CliError(f"log file not found: {path}")
    data = path.read_bytes()
    try:
        log = decode_canonical(data)
    except CodecError as exc:
        raise CliError(f"cannot decode log: {exc}") from exc
    if args.project and log.project_id != args.project:
        raise CliError(
            f"log belongs to project {log.project_id!r}, --project says {args.project!r}"
        )
    store = _store(args)
    with store.project_lock(log.project_id):
        try:
            report = store.ingest(log.session_token, data)
        except RejectedLogError as exc:
            for violation in exc.report.violations:
                print(
                    f"violation {violation.kind.value} at event {violation.index}: "
                    f"{violation.detail}",
                    file=sys.stderr,
                )
            raise CliError("log rejected") from exc
    for violation in report.violations:
        print(
            f"warning {violation.kind.value} at event {violation.index}: "
            f"{violation.detail}",
            file=sys.stderr,
        )
    print(f"ingested session {log.session_token} into project {log.project_id}")
    return 0


def cmd_aggregate(args) -> int:
    manifest = _store(args).aggregate(args.project)
    print(json.dumps(manifest.as_dict(), sort_keys=True, indent=2))
    return 0


def cmd_analyze(args) -> int:
    store = _store(args)
    period = args.period
    if period <= 0:
        raise CliError(f"--period must be positive, got {period}")
    with store.project_lock(args.project):
        manifest = store.aggregate(args.project)
        for err in manifest.errors:
            print(f"skipped {err.file}: {err.error}", file=sys.stderr)
        if not manifest.entries:
            raise CliError(f"project {args.project} has no readable logs")

        out_dir = store.project_dir(args.project) / "analysis"
        out_dir.mkdir(parents=True, exist_ok=True)
        for stale in out_dir.glob("cumsum_*.tsv"):
            stale.unlink()

        rows = []
        sessions = []
        for entry in manifest.entries:
            log = store.read_log(args.project, entry.file)
            series = analysis.resample(log, period)
            rows.append(analysis.session_metrics(log, period))
            try:
                slot = store.find_token(entry.token).participant_slot
            except StoreError:
                slot = None
            sessions.append((entry.token, slot, series))
            (out_dir / f"cumsum_{entry.token}.tsv").write_text(
                analysis.format_cumsum_series(series), "utf-8"
            )

        (out_dir / "report.tsv").write_text(analysis.format_report(rows), "utf-8")

        dyad_lines = ["token_a\ttoken_b\tslot_a\tslot_b\tmse"]
        pair_count = 0
        for i in range(len(sessions)):
            for j in range(i + 1, len(sessions)):
                (tok_a, slot_a, ser_a), (tok_b, slot_b, ser_b) = sessions[i], sessions[j]
                if slot_a is None or slot_b is None or slot_a == slot_b:
                    continue
                if tok_b < tok_a:
                    tok_a, slot_a, ser_a, tok_b, slot_b, ser_b = (
                        tok_b, slot_b, ser_b, tok_a, slot_a, ser_a,
                    )
                mse = analysis.dyad_disagreement(ser_a, ser_b)
                dyad_lines.append(f"{tok_a}\t{tok_b}\t{slot_a}\t{slot_b}\t{mse!r}")
                pair_count += 1
        dyad_lines_sorted = [dyad_lines[0]] + sorted(dyad_lines[1:])
        (out_dir / "dyads.tsv").write_text("\n".join(dyad_lines_sorted) + "\n", "utf-8")

    print(f"analyzed {len(rows)} session(s), {pair_count} dyad pair(s) -> {out_dir}")
    return 0


def cmd_serve(args) -> int:
    config: dict[str, str] = {}
    if args.config:
        config = load_config(args.config)
    listen = args.listen or config.get("listen", "127.0.0.1:8080")
    data_dir = args.data_dir or config.get("data_dir", "data")
    media_dir = args.media_dir or config.get("media_dir")
    static_dir = args.static_dir or config.get("static_dir")
    store = ProjectStore(data_dir, media_root=media_dir)
    server = CoraeServer(parse_listen(listen), store, static_dir=static_dir, verbose=True)
    print(f"serving on {server.url} (data: {data_dir})", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _add_data_dir(parser, default: str | None = "data"):
    parser.add_argument("--data-dir", default=default, help="data directory root")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corae", description="continuous retrospective annotation backend"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("create", help="register a new project in draft state")
    p.add_argument("--project", required=True)
    p.add_argument("--template", required=True, help="template file to install")
    _add_data_dir(p)
    p.set_defaults(func=cmd_create)

    p = sub.add_parser("stage", help="move a draft project to staged")
    p.add_argument("--project", required=True)
    _add_data_dir(p)
    p.set_defaults(func=cmd_stage)

    p = sub.add_parser("publish", help="move a staged project to published")
    p.add_argument("--project", required=True)
    _add_data_dir(p)
    p.set_defaults(func=cmd_publish)

    p = sub.add_parser("mint-urls", help="mint one participant URL per slot")
    p.add_argument("--project", required=True)
    p.add_argument("--slots", required=True, help="comma-separated slot names")
    p.add_argument("--base-url", default="", help="prefix printed before each path")
    _add_data_dir(p)
    p.set_defaults(func=cmd_mint_urls)

    p = sub.add_parser("ingest", help="ingest a downloaded annotation log file")
    p.add_argument("--file", required=True)
    p.add_argument("--project", default=None, help="cross-check the log's project id")
    _add_data_dir(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("aggregate", help="list every stored log for a project")
    p.add_argument("--project", required=True)
    _add_data_dir(p)
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("analyze", help="compute per-session metrics and dyad disagreement")
    p.add_argument("--project", required=True)
    p.add_argument("--period", type=float, default=0.1, help="resampling period in seconds")
    _add_data_dir(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("serve", help="run the HTTP server")
    p.add_argument("--config", default=None, help="plain-text key = value config file")
    p.add_argument("--listen", default=None, help="host:port")
    p.add_argument("--media-dir", default=None)
    p.add_argument("--static-dir", default=None, help="dashboard build to serve")
    _add_data_dir(p, default=None)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, StoreError, CodecError, TemplateError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
