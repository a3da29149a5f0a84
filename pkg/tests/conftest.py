from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def diagrams_dir() -> Path:
    return ROOT / "diagrams"


@pytest.fixture(scope="session")
def corpus_files(diagrams_dir: Path) -> list[Path]:
    """Every valid example diagram shipped with the repository."""
    files = sorted(diagrams_dir.glob("*.sd"))
    assert files, "diagram corpus is missing"
    return files
