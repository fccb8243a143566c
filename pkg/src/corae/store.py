"""Filesystem persistence for projects, sessions and logs.

Everything lives under a data root, one directory per project:

    data/{project_id}/templates/project.conf
    data/{project_id}/sessions/{token}.json
    data/{project_id}/logs/{project_id}_{token}.corae.json
    data/{project_id}/media/{file}

Log writes are write-then-rename so a crash mid-ingest never leaves a
partial file visible to aggregation. Per-token ingestion is serialized; the
rest is read-mostly.
"""

from __future__ import annotations

import dataclasses
import fcntl
import json
import secrets
import threading
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path

from .codec import CodecError, decode_canonical, encode_canonical, log_filename
from .engine import ValidationReport, validate_log
from .model import ProjectState, ProjectTemplate
from .template import format_template, parse_template

TEMPLATE_FILE = "project.conf"


class StoreError(Exception):
    pass


class UnknownProjectError(StoreError):
    pass


class DuplicateProjectError(StoreError):
    pass


class IllegalTransitionError(StoreError):
    pass


class UnknownSlotError(StoreError):
    pass


class NotPublishedError(StoreError):
    pass


class UnknownTokenError(StoreError):
    pass


class TokenConsumedError(StoreError):
    pass


class LogMismatchError(StoreError):
    pass


class RejectedLogError(StoreError):
    """The submitted log has fatal contract violations."""

    def __init__(self, report: ValidationReport):
        self.report = report
        kinds = sorted({v.kind.value for v in report.violations})
        super().__init__(f"log rejected: {', '.join(kinds)}")


@dataclasses.dataclass
class TokenRecord:
    token: str
    project_id: str
    participant_slot: str
    created_at: str
    consumed: bool = False

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass
class ManifestEntry:
    file: str
    token: str
    participant_id: str | None
    event_count: int
    duration: float


@dataclasses.dataclass
class ManifestError:
    file: str
    error: str


@dataclasses.dataclass
class Manifest:
    project_id: str
    entries: list[ManifestEntry]
    errors: list[ManifestError]

    def as_dict(self) -> dict:
        return {
            "project_id": self.project_id,
            "entries": [dataclasses.asdict(e) for e in self.entries],
            "errors": [dataclasses.asdict(e) for e in self.errors],
        }


def _atomic_write(path: Path, data: bytes) -> None:
    tmp = path.parent / (path.name + ".tmp")
    tmp.write_bytes(data)
    tmp.replace(path)


class ProjectStore:
    def __init__(self, data_root: str | Path, media_root: str | Path | None = None):
        self.data_root = Path(data_root)
        self.media_root = Path(media_root) if media_root is not None else self.data_root
        self._guard = threading.Lock()
        self._token_locks: dict[str, threading.Lock] = {}

    # -- paths ------------------------------------------------------------

    def project_dir(self, project_id: str) -> Path:
        return self.data_root / project_id

    def template_path(self, project_id: str) -> Path:
        return self.project_dir(project_id) / "templates" / TEMPLATE_FILE

    def logs_dir(self, project_id: str) -> Path:
        return self.project_dir(project_id) / "logs"

    def sessions_dir(self, project_id: str) -> Path:
        return self.project_dir(project_id) / "sessions"

    def media_dir(self, project_id: str) -> Path:
        return self.media_root / project_id / "media"

    def _token_lock(self, token: str) -> threading.Lock:
        with self._guard:
            return self._token_locks.setdefault(token, threading.Lock())

    @contextmanager
    def project_lock(self, project_id: str | None = None):
        """Advisory file lock for mutating admin commands."""
        root = self.project_dir(project_id) if project_id else self.data_root
        root.mkdir(parents=True, exist_ok=True)
        lock_path = root / ".lock"
        with open(lock_path, "w") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    # -- projects ----------------------------------------------------------

    def project_exists(self, project_id: str) -> bool:
        return self.template_path(project_id).exists()

    def list_projects(self) -> list[str]:
        if not self.data_root.is_dir():
            return []
        return sorted(
            p.name for p in self.data_root.iterdir() if self.template_path(p.name).exists()
        )

    def create_project(self, template: ProjectTemplate) -> ProjectTemplate:
        """Register a new project in Draft state."""
        if self.project_exists(template.project_id):
            raise DuplicateProjectError(f"project {template.project_id!r} already exists")
        template = dataclasses.replace(template, state=ProjectState.DRAFT)
        pdir = self.project_dir(template.project_id)
        for sub in ("templates", "logs", "sessions"):
            (pdir / sub).mkdir(parents=True, exist_ok=True)
        self.media_dir(template.project_id).mkdir(parents=True, exist_ok=True)
        self.save_template(template)
        return template

    def load_template(self, project_id: str) -> ProjectTemplate:
        path = self.template_path(project_id)
        if not path.exists():
            raise UnknownProjectError(f"unknown project {project_id!r}")
        return parse_template(path.read_text("utf-8"), default_project_id=project_id)

    def save_template(self, template: ProjectTemplate) -> None:
        _atomic_write(
            self.template_path(template.project_id),
            format_template(template).encode("utf-8"),
        )

    def transition(self, project_id: str, target: ProjectState) -> ProjectTemplate:
        template = self.load_template(project_id)
        legal = {
            ProjectState.DRAFT: ProjectState.STAGED,
            ProjectState.STAGED: ProjectState.PUBLISHED,
        }
        if legal.get(template.state) is not target:
            raise IllegalTransitionError(
                f"cannot move project {project_id!r} from {template.state.value} "
                f"to {target.value}"
            )
        if target is ProjectState.PUBLISHED and not template.media_entries:
            raise IllegalTransitionError(
                f"project {project_id!r} has no media entries; publish refused"
            )
        template = dataclasses.replace(template, state=target)
        self.save_template(template)
        return template

    # -- sessions ----------------------------------------------------------

    def create_session(self, project_id: str, participant_slot: str) -> TokenRecord:
        """Mint a fresh single-use session token for one participant slot."""
        template = self.load_template(project_id)
        if template.state is not ProjectState.PUBLISHED:
            raise NotPublishedError(
                f"project {project_id!r} is {template.state.value}, not published"
            )
        if participant_slot not in template.media_entries:
            raise UnknownSlotError(
                f"project {project_id!r} has no media entry for slot {participant_slot!r}"
            )
        sessions = self.sessions_dir(project_id)
        sessions.mkdir(parents=True, exist_ok=True)
        while True:
            token = secrets.token_urlsafe(16)
            path = sessions / f"{token}.json"
            if not path.exists():
                break
        record = TokenRecord(
            token=token,
            project_id=project_id,
            participant_slot=participant_slot,
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )
        _atomic_write(path, json.dumps(record.as_dict(), sort_keys=True, indent=2).encode())
        return record

    def find_token(self, token: str) -> TokenRecord:
        if not token or "/" in token or token.startswith("."):
            raise UnknownTokenError(f"unknown token {token!r}")
        if self.data_root.is_dir():
            for project_dir in self.data_root.iterdir():
                path = project_dir / "sessions" / f"{token}.json"
                if path.exists():
                    doc = json.loads(path.read_text("utf-8"))
                    return TokenRecord(**doc)
        raise UnknownTokenError(f"unknown token {token!r}")

    def _save_token(self, record: TokenRecord) -> None:
        path = self.sessions_dir(record.project_id) / f"{record.token}.json"
        _atomic_write(path, json.dumps(record.as_dict(), sort_keys=True, indent=2).encode())

    def session_url(self, token: str) -> str:
        return f"/annotate/{token}"

    def get_session_bundle(self, token: str) -> dict:
        """Everything the annotation dashboard needs to run a session."""
        record = self.find_token(token)
        template = self.load_template(record.project_id)
        media_file = template.media_entries[record.participant_slot]
        return {
            "session_token": record.token,
            "project_id": record.project_id,
            "participant_slot": record.participant_slot,
            "instructions": template.instructions,
            "scale": template.scale.as_dict(),
            "logging_interval": template.logging_interval,
            "fps": template.fps,
            "identifier_prompt_enabled": template.identifier_prompt_enabled,
            "media_url": f"/media/{record.project_id}/{media_file}",
        }

    # -- logs ----------------------------------------------------------------

    def ingest(self, token: str, data: bytes) -> ValidationReport:
        """Validate and persist a submitted log; marks the token consumed.

        Re-submitting a byte-identical payload for a consumed token is
        accepted without writing a duplicate. Logs with fatal violations are
        rejected and never touch the aggregation directory.
        """
        with self._token_lock(token):
            record = self.find_token(token)
            log = decode_canonical(data)
            if log.session_token != token:
                raise LogMismatchError(
                    f"log names session {log.session_token!r}, submitted for {token!r}"
                )
            if log.project_id != record.project_id:
                raise LogMismatchError(
                    f"log names project {log.project_id!r}, token belongs to "
                    f"{record.project_id!r}"
                )
            report = validate_log(log)
            if report.fatal:
                raise RejectedLogError(report)
            canonical = encode_canonical(log, validate=False)
            path = self.logs_dir(record.project_id) / log_filename(record.project_id, token)
            if record.consumed:
                if path.exists() and path.read_bytes() == canonical:
                    return report
                raise TokenConsumedError(f"token {token!r} already consumed")
            path.parent.mkdir(parents=True, exist_ok=True)
            _atomic_write(path, canonical)
            record.consumed = True
            self._save_token(record)
            return report

    def read_log(self, project_id: str, filename: str):
        return decode_canonical((self.logs_dir(project_id) / filename).read_bytes())

    def aggregate(self, project_id: str) -> Manifest:
        """Scan a project's log directory and verify every file decodes."""
        if not self.project_exists(project_id):
            raise UnknownProjectError(f"unknown project {project_id!r}")
        entries: list[ManifestEntry] = []
        errors: list[ManifestError] = []
        logs = self.logs_dir(project_id)
        for path in sorted(logs.glob("*.corae.json")) if logs.is_dir() else []:
            try:
                log = decode_canonical(path.read_bytes())
            except (CodecError, OSError) as exc:
                errors.append(ManifestError(file=path.name, error=str(exc)))
                continue
            entries.append(
                ManifestEntry(
                    file=path.name,
                    token=log.session_token,
                    participant_id=log.participant_id,
                    event_count=len(log.events),
                    duration=log.media_duration,
                )
            )
        return Manifest(project_id=project_id, entries=entries, errors=errors)
