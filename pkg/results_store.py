# results_store.py
import hashlib
import json
import logging
import os
from typing import Any, Dict, Optional

import pandas as pd

LIBRARY_VERSION = "0.3.0"
DEFAULT_OUT_DIR = "results"

_store = None


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)


def digest(payload: Any) -> str:
    """sha256 of the canonical JSON of `payload`."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------
# 💾 Report persistence
# ---------------------------------------------------------------------
class ResultsStore:
    """Writes reports as <name>.json plus one <name>_<table>.csv per table."""

    def __init__(self, out_dir: str = DEFAULT_OUT_DIR):
        self.out_dir = out_dir
        if not os.path.exists(out_dir):
            os.makedirs(out_dir)

    def path(self, name: str, suffix: str = ".json") -> str:
        return os.path.join(self.out_dir, f"{name}{suffix}")

    def save_report(self, name: str, payload: Dict[str, Any], tables: Optional[Dict[str, pd.DataFrame]] = None,
                    config_hash: Optional[str] = None, alphabet_hash: Optional[str] = None) -> bool:
        """Save a report with its meta block; tables also go to CSV. Returns False on I/O failure."""
        meta = {
            "library_version": LIBRARY_VERSION,
            "config_hash": config_hash,
            "alphabet_hash": alphabet_hash,
        }
        document = dict(payload)
        document["meta"] = meta
        try:
            for table_name, df in (tables or {}).items():
                csv_path = self.path(f"{name}_{table_name}", ".csv")
                df.to_csv(csv_path, index=False)
                document.setdefault("tables", {})[table_name] = os.path.basename(csv_path)
            with open(self.path(name), "w", encoding="utf-8") as fh:
                json.dump(document, fh, indent=2, sort_keys=True, default=str)
            logging.info(f"✅ Report '{name}' saved to {self.out_dir}")
            return True
        except OSError as e:
            logging.exception(f"❌ Could not save report '{name}': {e}")
            return False

    def load_report(self, name: str) -> Optional[Dict[str, Any]]:
        try:
            with open(self.path(name), encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            logging.error(f"❌ Could not load report '{name}': {e}")
            return None

    def load_table(self, name: str, table: str) -> pd.DataFrame:
        return pd.read_csv(self.path(f"{name}_{table}", ".csv"))


def get_store(out_dir: Optional[str] = None) -> ResultsStore:
    """Module-level store; a new out_dir replaces it."""
    global _store
    if _store is None or (out_dir is not None and _store.out_dir != out_dir):
        _store = ResultsStore(out_dir or DEFAULT_OUT_DIR)
    return _store


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def write_json(path: str, payload: Any):
    parent = os.path.dirname(path)
    if parent and not os.path.exists(parent):
        os.makedirs(parent)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, default=str)
