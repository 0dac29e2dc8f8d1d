import pytest

from src.utils.log_manager import LogManager


@pytest.fixture
def log_manager(tmp_path):
    manager = LogManager(base_dir=str(tmp_path / "logs"))
    with manager.session("test"):
        yield manager
