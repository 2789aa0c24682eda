from datetime import datetime, timezone
from typing import Dict, List, Optional

from tinydb import Query, TinyDB
from tinydb.table import Table

from ..config import settings
from ..models.report import VerifyReport

# Opened on first use so that importing the package never creates a file
_db: Optional[TinyDB] = None
_db_path: Optional[str] = None

Run = Query()


def get_db() -> TinyDB:
    """The run ledger, reopened if QC_DB_PATH changed since the last call"""
    global _db, _db_path
    if _db is None or _db_path != settings.db_path:
        if _db is not None:
            _db.close()
        _db = TinyDB(settings.db_path)
        _db_path = settings.db_path
    return _db


def runs_table() -> Table:
    return get_db().table("runs")


def record_run(report: VerifyReport, exit_status: int) -> int:
    """Store one verify run and return its document id"""
    return runs_table().insert(
        {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "parameters": report.parameters,
            "suites": [s.model_dump() for s in report.suites],
            "ok": report.ok,
            "exit_status": exit_status,
        }
    )


def list_runs(limit: Optional[int] = None, failed_only: bool = False) -> List[Dict]:
    """Stored runs, newest first"""
    table = runs_table()
    runs = table.search(Run.ok == False) if failed_only else table.all()  # noqa: E712
    runs = sorted(runs, key=lambda r: r.doc_id, reverse=True)
    if limit is not None:
        runs = runs[:limit]
    return [dict(r, id=r.doc_id) for r in runs]
