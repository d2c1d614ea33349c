"""
Artifact client: JSON, CSV and JSON-lines persistence in an output directory.
"""

import csv
import json
import os
from typing import Any, Dict, Iterable, List, Sequence, Tuple


class ArtifactClient:
    """
    Reads and writes run artifacts.

    Bare names ('policy.json') resolve inside output_dir; names with a
    directory component or absolute paths are used as given. JSON documents
    are also kept in memory once read or written.

    Usage:
        client = ArtifactClient('output')
        client.save_json('policy.json', document)
        header, rows = client.load_csv('mobility_chain.csv')
    """

    def __init__(self, output_dir: str = "output"):
        """
        Initialize the artifact client.

        Args:
            output_dir: Directory for artifacts given by bare name (default: "output")
        """
        self.output_dir = output_dir
        self._data_store: Dict[str, Any] = {}  # In-memory storage: {path: data}

        os.makedirs(output_dir, exist_ok=True)

    def path(self, name: str) -> str:
        """Resolves an artifact name to a file path."""
        if os.path.isabs(name) or os.path.dirname(name):
            return name
        return os.path.join(self.output_dir, name)

    def exists(self, name: str) -> bool:
        return os.path.exists(self.path(name))

    def _prepare(self, name: str) -> str:
        filepath = self.path(name)
        directory = os.path.dirname(filepath)
        if directory:
            os.makedirs(directory, exist_ok=True)
        return filepath

    # ──────────────────────────────────────────────────────
    # JSON
    # ──────────────────────────────────────────────────────

    def save_json(self, name: str, data: Any) -> str:
        """
        Save data to memory and to a JSON file.

        Returns:
            The written path
        """
        filepath = self._prepare(name)
        self._data_store[filepath] = data

        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=2, ensure_ascii=False)
        return filepath

    def load_json(self, name: str) -> Any:
        """
        Load a JSON artifact.

        Raises:
            FileNotFoundError: If the file does not exist
        """
        filepath = self.path(name)
        if filepath in self._data_store:
            return self._data_store[filepath]

        if not os.path.exists(filepath):
            raise FileNotFoundError(f"Artifact not found: {filepath}")

        with open(filepath, 'r', encoding='utf-8') as f:
            data = json.load(f)
        self._data_store[filepath] = data
        return data

    # ──────────────────────────────────────────────────────
    # CSV
    # ──────────────────────────────────────────────────────

    def save_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        """Write a header row followed by data rows. Floats keep full precision."""
        filepath = self._prepare(name)

        with open(filepath, 'w', encoding='utf-8', newline='') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow(['' if value is None else _format_cell(value) for value in row])
        return filepath

    def load_csv(self, name: str) -> Tuple[List[str], List[List[str]]]:
        """
        Returns:
            (header, rows) with every cell as text
        """
        filepath = self.path(name)
        if not os.path.exists(filepath):
            raise FileNotFoundError(f"Artifact not found: {filepath}")

        with open(filepath, 'r', encoding='utf-8', newline='') as f:
            reader = csv.reader(f)
            header = next(reader, [])
            rows = [row for row in reader if row]
        return header, rows

    # ──────────────────────────────────────────────────────
    # JSON-lines
    # ──────────────────────────────────────────────────────

    def save_jsonl(self, name: str, records: Iterable[Dict[str, Any]]) -> str:
        filepath = self._prepare(name)

        with open(filepath, 'w', encoding='utf-8') as f:
            for record in records:
                f.write(json.dumps(record, ensure_ascii=False))
                f.write('\n')
        return filepath

    def load_jsonl(self, name: str) -> List[Dict[str, Any]]:
        filepath = self.path(name)
        if not os.path.exists(filepath):
            raise FileNotFoundError(f"Artifact not found: {filepath}")

        with open(filepath, 'r', encoding='utf-8') as f:
            return [json.loads(line) for line in f if line.strip()]


def _format_cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if hasattr(value, 'item'):
        # numpy scalars
        return _format_cell(value.item())
    return str(value)
