import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from singidx.cli import load_problem
from singidx.polyring import Polynomial, RingContext

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def load_corpus(name):
    raw = json.loads((CORPUS / f"{name}.json").read_text())
    expected = json.loads((CORPUS / f"{name}.expected.json").read_text())
    return load_problem(raw), expected


def corpus_names():
    return sorted(p.stem for p in CORPUS.glob("*.json") if not p.name.endswith(".expected.json"))


@pytest.fixture
def xyz():
    return RingContext(("x", "y", "z"))


@pytest.fixture
def xy():
    return RingContext(("x", "y"))


def rationals(max_num=20, max_den=6):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def polynomials(ctx, max_terms=5, max_exp=3):
    exps = st.tuples(*[st.integers(0, max_exp) for _ in range(ctx.nvars)])
    return st.dictionaries(exps, rationals(), max_size=max_terms).map(
        lambda d: Polynomial.from_dict(ctx, d))
