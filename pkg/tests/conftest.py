from __future__ import annotations

from pathlib import Path

import pytest

from euclid_kernel import check_theory, parse_source

CORPUS = Path(__file__).resolve().parent.parent / "corpus" / "book1.euclid"


def corpus_source() -> str:
    return CORPUS.read_text(encoding="utf-8")


def edit(source: str, old: str, new: str) -> str:
    """Replace one exact occurrence; fails loudly if the anchor moved."""
    assert source.count(old) == 1, f"anchor not unique: {old!r}"
    return source.replace(old, new)


def block(source: str, number: str) -> str:
    """Source text of the proposition numbered ``number``."""
    lines = source.splitlines(keepends=True)
    start = next(i for i, ln in enumerate(lines)
                 if ln.split()[-1:] == [number] and ln.split()[0] in ("problem", "theorem", "primitive"))
    end = start + 1
    while end < len(lines) and lines[end].strip().split()[:1] not in (["problem"], ["theorem"], ["primitive"]):
        end += 1
    return "".join(lines[start:end])


@pytest.fixture(scope="session")
def source() -> str:
    return corpus_source()


@pytest.fixture(scope="session")
def theory(source):
    return parse_source(source)


@pytest.fixture(scope="session")
def result(theory):
    return check_theory(theory)


@pytest.fixture(scope="session")
def reports(result):
    return {r.number: r for r in result.reports}


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
