"""Command-line front door: the full pipeline without the UI.

State lives in the configured state directory; every command restores it,
runs, and persists again, so CLI sessions and HTTP sessions are
interchangeable. Exit codes: 0 success, 1 validation/usage error,
2 runtime error. With --json all output is line-oriented JSON.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .config import ServiceConfig, build_service, load_config
from .curation import CurationService, VERDICT_COLORS
from .errors import FactGraphError, RuntimeFailure
from .records import ReviewAction, TrustChannel, record_to_dict
from .veracity import verdict_to_dict


def _emit(data: dict, as_json: bool, human: str) -> None:
    if as_json:
        click.echo(json.dumps(data, ensure_ascii=False, sort_keys=True))
    else:
        click.echo(human)


def _load(ctx: click.Context) -> tuple[ServiceConfig, CurationService]:
    config_path = ctx.obj["config"]
    if config_path and Path(config_path).exists():
        config = load_config(config_path)
    else:
        config = ServiceConfig(state_dir=str(Path.cwd() / "state"))
    service = build_service(config)
    return config, service


@click.group()
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default="factgraph.json",
    show_default=True,
    help="Service config file (JSON); missing file means defaults.",
)
@click.pass_context
def cli(ctx: click.Context, config_path: str) -> None:
    """Check media statements against a trusted knowledge graph."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = config_path


@cli.command()
@click.argument("source")
@click.option("--trust", type=click.Choice(["trusted", "untrusted"]), required=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def ingest(ctx, source: str, trust: str, as_json: bool) -> None:
    """Store a document (URL or local .html/.txt file) under a stable media id."""
    config, service = _load(ctx)
    media_id = service.ingest(source, TrustChannel(trust))
    service.persist(config.state_dir)
    _emit({"media_id": media_id}, as_json, f"media_id\t{media_id}")


@cli.command()
@click.argument("media_id")
@click.option("--mode", type=click.Choice(["rule", "remote"]), default="rule", show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def extract(ctx, media_id: str, mode: str, as_json: bool) -> None:
    """Extract, filter, and align statements from a stored document."""
    config, service = _load(ctx)
    record_ids = service.extract(media_id, mode)
    service.persist(config.state_dir)
    _emit(
        {"media_id": media_id, "record_ids": record_ids},
        as_json,
        "\n".join(record_ids) if record_ids else "(no statements extracted)",
    )


@cli.command()
@click.argument("subject")
@click.argument("predicate")
@click.argument("object", metavar="OBJECT")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def check(ctx, subject: str, predicate: str, object: str, as_json: bool) -> None:
    """Verdict for one claim against the trusted graph."""
    _, service = _load(ctx)
    verdict = service.check(subject, predicate, object)
    data = verdict_to_dict(verdict)
    color = VERDICT_COLORS[verdict.verdict]
    _emit(
        data,
        as_json,
        f"{verdict.verdict.value}\tveracity={verdict.veracity:.4f}\t"
        f"threshold={verdict.threshold_used}\tcolor={color}",
    )


@cli.command()
@click.argument("media_id")
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def score(ctx, media_id: str, as_json: bool) -> None:
    """Document report: per-statement verdicts, colors, and the mean accuracy."""
    _, service = _load(ctx)
    report = service.get_document_report(media_id)
    if as_json:
        click.echo(json.dumps(report, ensure_ascii=False, sort_keys=True))
        return
    if report["empty_document"]:
        click.echo(f"{media_id}\t(no statements)")
        return
    for statement in report["statements"]:
        click.echo(
            f"{statement['record_id']}\t{statement['color']}\t"
            f"{statement['verdict']['verdict']}\t{statement['score']:.4f}\t"
            f"{statement['sentence']}"
        )
    click.echo(f"aggregate\t{report['aggregate']:.4f}")


@cli.command()
@click.argument("record_id")
@click.argument("action", type=click.Choice(["approve", "reject", "reopen"]))
@click.option("--by", "reviewer", required=True, help="Reviewer identity.")
@click.option("--note", default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def review(ctx, record_id: str, action: str, reviewer: str, note: str | None, as_json: bool) -> None:
    """Approve, reject, or reopen a pending statement."""
    config, service = _load(ctx)
    record = service.review(record_id, ReviewAction(action), reviewer, note)
    service.persist(config.state_dir)
    _emit(
        record_to_dict(record),
        as_json,
        f"{record.record_id}\t{record.review_state.value}",
    )


@cli.command("kg-import")
@click.argument("ttl", type=click.Path(exists=True, dir_okay=False))
@click.option("--sidecar", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def kg_import(ctx, ttl: str, sidecar: str | None, as_json: bool) -> None:
    """Load a curated .ttl (plus optional annotation sidecar) as ground truth."""
    config, service = _load(ctx)
    added = service.bootstrap_import(ttl, sidecar)
    service.persist(config.state_dir)
    stats = service.stats()
    _emit(
        {"added": added, **stats},
        as_json,
        f"added {added} triples ({stats['triples']} total, {stats['nodes']} nodes)",
    )


@cli.command("kg-export")
@click.argument("path", type=click.Path(dir_okay=False, writable=True))
@click.option("--json", "as_json", is_flag=True)
@click.pass_context
def kg_export(ctx, path: str, as_json: bool) -> None:
    """Write the trusted graph as Turtle."""
    _, service = _load(ctx)
    text = service.export_turtle()
    Path(path).write_text(text, encoding="utf-8")
    _emit(
        {"path": path, "triples": len(service.kg)},
        as_json,
        f"wrote {len(service.kg)} triples to {path}",
    )


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None, help="Overrides the config port.")
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    default=None,
    help="Service config file; overrides the group-level flag.",
)
@click.pass_context
def serve(ctx, host: str, port: int | None, config_path: str | None) -> None:
    """Run the HTTP API (and persist state on shutdown)."""
    import uvicorn

    from .api import create_app
    from .errors import BindError

    if config_path:
        ctx.obj["config"] = config_path
    config, service = _load(ctx)
    app = create_app(service, ui_origin=config.ui_origin)
    try:
        uvicorn.run(app, host=host, port=port if port is not None else config.port)
    except (OSError, SystemExit) as exc:
        raise BindError(f"could not serve on port {config.port}: {exc}") from exc
    finally:
        service.persist(config.state_dir)


def main(argv: list[str] | None = None) -> int:
    """Run the CLI, mapping errors onto the documented exit codes."""
    try:
        cli.main(args=argv, standalone_mode=False, obj={})
        return 0
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except RuntimeFailure as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except FactGraphError as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
