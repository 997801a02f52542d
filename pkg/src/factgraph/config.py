"""Service configuration file (JSON) and service construction from it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .alignment import AlignmentTables, load_tables
from .curation import CurationService
from .errors import InvalidRequest, IoError
from .extraction import ExtractorConfig
from .scoring import WeightConfig
from .veracity import ProximityConfig

DEFAULT_STATE_DIR = "state"


@dataclass
class ServiceConfig:
    port: int = 8000
    state_dir: str = DEFAULT_STATE_DIR
    weights: dict[str, float] = field(default_factory=lambda: {"veracity": 1.0})
    proximity: ProximityConfig = field(default_factory=ProximityConfig)
    extractor: ExtractorConfig | None = None
    tables_path: str | None = None
    negation_map: dict[str, str] = field(default_factory=dict)
    ui_origin: str = "*"


def config_from_dict(data: dict, base_dir: Path | None = None) -> ServiceConfig:
    base = base_dir or Path.cwd()

    def resolve(path: str | None) -> str | None:
        if path is None:
            return None
        p = Path(path)
        return str(p if p.is_absolute() else base / p)

    proximity_data = data.get("proximity", {})
    try:
        proximity = ProximityConfig(
            theta=float(proximity_data.get("theta", 0.5)),
            max_hops=int(proximity_data.get("max_hops", 6)),
            incoming_weight=float(proximity_data.get("incoming_weight", 1.0)),
        )
    except ValueError as exc:
        raise InvalidRequest(f"bad proximity config: {exc}") from exc

    extractor = None
    extractor_data = data.get("extractor")
    if extractor_data:
        prompt_template = extractor_data.get("prompt_template", "")
        prompt_path = resolve(extractor_data.get("prompt_path"))
        if prompt_path:
            try:
                prompt_template = Path(prompt_path).read_text(encoding="utf-8")
            except OSError as exc:
                raise IoError(str(exc)) from exc
        try:
            extractor = ExtractorConfig(
                endpoint_url=extractor_data["endpoint_url"],
                model=extractor_data["model"],
                api_key_env_var=extractor_data["api_key_env_var"],
                temperature=float(extractor_data.get("temperature", 0.0)),
                max_retries=int(extractor_data.get("max_retries", 2)),
                prompt_template=prompt_template,
            )
        except (KeyError, ValueError) as exc:
            raise InvalidRequest(f"bad extractor config: {exc}") from exc

    return ServiceConfig(
        port=int(data.get("port", 8000)),
        state_dir=resolve(data.get("state_dir", DEFAULT_STATE_DIR)),
        weights={str(k): float(v) for k, v in data.get("weights", {"veracity": 1.0}).items()},
        proximity=proximity,
        extractor=extractor,
        tables_path=resolve(data.get("tables_path")),
        negation_map={str(k): str(v) for k, v in data.get("negation_map", {}).items()},
        ui_origin=data.get("ui_origin", "*"),
    )


def load_config(path: Path | str) -> ServiceConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(str(exc)) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidRequest(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidRequest("config file must contain a JSON object")
    return config_from_dict(data, base_dir=path.resolve().parent)


def build_service(config: ServiceConfig, restore_state: bool = True) -> CurationService:
    """Construct a service from config, restoring any persisted state."""
    tables = load_tables(config.tables_path) if config.tables_path else AlignmentTables.empty()
    service = CurationService(
        tables=tables,
        weights=WeightConfig(weights=dict(config.weights)),
        proximity=config.proximity,
        extractor_config=config.extractor,
        audit_log_path=(
            Path(config.state_dir) / "extractor_audit.jsonl" if config.state_dir else None
        ),
    )
    service.kg.set_negation_map(config.negation_map)
    if restore_state and config.state_dir:
        service.restore(config.state_dir)
    return service
