import pytest

from app.errors import UsageError
from app.settings import Settings, load_settings


def test_defaults_without_file(tmp_path, monkeypatch):
    for name in ("AVDC_DATA_ROOT", "AVDC_BRUTE_CAP", "AVDC_DECIMAL_DIGITS", "AVDC_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    settings = load_settings(tmp_path / "absent.toml")
    assert settings == Settings()
    assert settings.app.log_level == "WARNING"
    assert settings.discrepancy.brute_cap == 1_000_000
    assert settings.brs.fit_min_n == 1024


def test_file_values_and_env_overrides(tmp_path, monkeypatch):
    path = tmp_path / "settings.toml"
    path.write_text(
        '[app]\nlog_level = "info"\n\n[brs]\nfit_min_n = 64\n\n[discrepancy]\nbrute_cap = 5000\n',
        encoding="utf-8",
    )
    monkeypatch.setenv("AVDC_BRUTE_CAP", "200")
    monkeypatch.setenv("AVDC_DATA_ROOT", str(tmp_path / "out"))
    monkeypatch.delenv("AVDC_LOG_LEVEL", raising=False)
    settings = load_settings(path)
    assert settings.app.log_level == "INFO"
    assert settings.brs.fit_min_n == 64
    assert settings.discrepancy.brute_cap == 200
    assert settings.output.data_root == tmp_path / "out"


@pytest.mark.parametrize(
    "variable, value",
    [("AVDC_DECIMAL_DIGITS", "0"), ("AVDC_BRUTE_CAP", "many"), ("AVDC_LOG_LEVEL", "chatty")],
)
def test_invalid_values_are_usage_errors(tmp_path, monkeypatch, variable, value):
    monkeypatch.setenv(variable, value)
    with pytest.raises(UsageError):
        load_settings(tmp_path / "absent.toml")
