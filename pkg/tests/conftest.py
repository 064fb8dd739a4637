"""Shared pytest configuration."""

import pytest


def pytest_addoption(parser):
    parser.addoption("--run-acceptance", action="store_true", default=False,
                     help="Run the full-scale acceptance suite (minutes of CPU)")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: full-scale runs, enabled with --run-acceptance")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-acceptance"):
        return
    skip = pytest.mark.skip(reason="needs --run-acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)
