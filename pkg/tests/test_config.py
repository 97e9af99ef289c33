import logging
import os
import threading

import pytest

from zo_accsgd import log_util
from zo_accsgd.config import data_dir, ordered_map, worker_count
from zo_accsgd.errors import ConfigError


@pytest.mark.parametrize("raw, expected", [("1", 1), ("3", 3), ("", os.cpu_count() or 1), ("0", os.cpu_count() or 1)])
def test_worker_count_from_environment(monkeypatch, raw, expected):
    monkeypatch.setenv("ZO_THREADS", raw)
    assert worker_count() == expected


def test_explicit_worker_count_wins(monkeypatch):
    monkeypatch.setenv("ZO_THREADS", "8")
    assert worker_count(2) == 2


@pytest.mark.parametrize("raw", ["many", "-1"])
def test_bad_worker_count(monkeypatch, raw):
    monkeypatch.setenv("ZO_THREADS", raw)
    with pytest.raises(ConfigError):
        worker_count()


def test_data_dir(monkeypatch, tmp_path):
    monkeypatch.delenv("ZO_DATA_DIR", raising=False)
    assert data_dir() is None
    monkeypatch.setenv("ZO_DATA_DIR", str(tmp_path))
    assert data_dir() == str(tmp_path)


@pytest.mark.parametrize("workers", [1, 4])
def test_ordered_map_keeps_input_order(workers):
    assert ordered_map(lambda v: v * v, range(20), workers) == [v * v for v in range(20)]


def test_logger_is_namespaced():
    logger = log_util.get_logger("estimators")
    assert logger.name == "zo_accsgd.estimators"
    assert log_util.get_logger().propagate is False


def test_warn_reaches_handlers(caplog):
    logger = log_util.get_logger()
    logger.addHandler(caplog.handler)
    try:
        with caplog.at_level(logging.WARNING, logger="zo_accsgd"):
            log_util.warn("smoothing radius too small")
    finally:
        logger.removeHandler(caplog.handler)
    assert "smoothing radius too small" in caplog.text


def test_concurrent_first_use_attaches_one_handler(monkeypatch):
    logger = logging.getLogger("zo_accsgd")
    saved = list(logger.handlers)
    for handler in saved:
        logger.removeHandler(handler)
    monkeypatch.setattr(log_util, "_configured", False)
    barrier = threading.Barrier(16)

    def first_use(_):
        barrier.wait()
        return log_util.get_logger()

    try:
        ordered_map(first_use, range(16), 16)
        assert len(logger.handlers) == 1
    finally:
        for handler in list(logger.handlers):
            logger.removeHandler(handler)
        for handler in saved:
            logger.addHandler(handler)
