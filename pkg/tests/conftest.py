import pytest

from coreason_schubert.config import SchubertConfig


@pytest.fixture
def small_config() -> SchubertConfig:
    """Rank 2 only, with short length bounds and a small series model."""
    return SchubertConfig(
        max_n=2,
        workers=2,
        positivity_max_length=3,
        hopf_max_length=3,
        oracle_max_length=3,
        jacobi_trudi_max_size=2,
        truncation=4,
        alphabet_radius=5,
    )
