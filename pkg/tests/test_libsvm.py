import io
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import sparse

from zo_accsgd.errors import ParseError
from zo_accsgd.problems import KNOWN_DATASETS, load_libsvm, parse_libsvm, serialize_libsvm


def test_parse_example():
    X, y, meta = parse_libsvm(io.StringIO("+1 1:0.5 3:-2\n-1 2:1\n"))
    assert (meta.M, meta.d) == (2, 3)
    assert X.shape == (2, 3)
    np.testing.assert_array_equal(X.toarray(), [[0.5, 0.0, -2.0], [0.0, 1.0, 0.0]])
    np.testing.assert_array_equal(y, [1.0, -1.0])


def test_blank_lines_are_skipped():
    X, y, meta = parse_libsvm(["+1 1:1\n", "\n", "   \n", "-1 2:1\n"])
    assert meta.M == 2
    assert X.shape == (2, 2)


def test_other_label_values_are_mapped():
    _, y, _ = parse_libsvm(["2 1:1", "4 1:2", "2 1:3"])
    np.testing.assert_array_equal(y, [-1.0, 1.0, -1.0])
    _, y01, _ = parse_libsvm(["0 1:1", "1 1:2"])
    np.testing.assert_array_equal(y01, [-1.0, 1.0])


def test_n_features_pads_columns():
    X, _, meta = parse_libsvm(["+1 1:1", "-1 2:1"], n_features=5)
    assert X.shape == (2, 5)
    assert meta.d == 5


@pytest.mark.parametrize(
    "text, line",
    [
        ("+1 1:1\nabc 1:1\n", 2),
        ("+1 1:1\n\n-1 1:x\n", 3),
        ("+1 1:1 1:2\n", 1),
        ("+1 3:1 2:2\n", 1),
        ("+1 0:1\n", 1),
        ("+1 1\n", 1),
        ("+1 1:1\n-1 1:1\n3 1:1\n", 3),
        ("+1 a:1\n", 1),
        ("+1 1:nan\n", 1),
    ],
)
def test_malformed_lines_report_line_number(text, line):
    with pytest.raises(ParseError) as info:
        parse_libsvm(io.StringIO(text))
    assert info.value.line_number == line
    assert f"line {line}" in str(info.value)


@pytest.mark.parametrize("lines", [["+1 1:1", "+1 2:1"], ["-1 1:1"], ["2 1:1", "2 2:3"]])
def test_single_class_rejected(lines):
    with pytest.raises(ParseError, match="two distinct labels"):
        parse_libsvm(lines)


def test_empty_input_rejected():
    with pytest.raises(ParseError):
        parse_libsvm(io.StringIO("\n\n"))


def test_serialize_example():
    X, y, _ = parse_libsvm(io.StringIO("+1 1:0.5 3:-2\n-1 2:1\n"))
    assert serialize_libsvm(X, y) == "+1 1:0.5 3:-2\n-1 2:1\n"


_rows = st.lists(
    st.dictionaries(
        st.integers(min_value=1, max_value=40),
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False),
        max_size=8,
    ),
    min_size=2,
    max_size=20,
)


@settings(max_examples=50, deadline=None)
@given(_rows, st.randoms(use_true_random=False))
def test_round_trip_preserves_values(rows, rnd):
    labels = np.array([rnd.choice((-1.0, 1.0)) for _ in rows])
    labels[:2] = (1.0, -1.0)
    lines = [" ".join(["+1" if lab > 0 else "-1"] + [f"{i}:{v!r}" for i, v in sorted(row.items())]) for row, lab in zip(rows, labels)]
    X, y, meta = parse_libsvm(lines, n_features=40)
    X2, y2, meta2 = parse_libsvm(io.StringIO(serialize_libsvm(X, y)), n_features=40)
    np.testing.assert_array_equal(y, y2)
    assert (meta.M, meta.d) == (meta2.M, meta2.d)
    np.testing.assert_allclose(X2.toarray(), X.toarray(), rtol=1e-12, atol=0)


def test_load_libsvm_records_source(tmp_path):
    path = tmp_path / "tiny.txt"
    path.write_text(serialize_libsvm(sparse.csr_matrix(np.array([[1.0, 0.0], [0.0, 2.5]])), np.array([1.0, -1.0])))
    X, y, meta = load_libsvm(str(path))
    assert meta.name == "tiny.txt"
    assert meta.source == os.path.abspath(str(path))
    assert X.shape == (2, 2)


@pytest.mark.parametrize("name", sorted(KNOWN_DATASETS))
def test_benchmark_dataset_shapes(name):
    root = os.environ.get("ZO_DATA_DIR")
    path = os.path.join(root, name) if root else None
    if not path or not os.path.exists(path):
        pytest.skip(f"{name} not found under ZO_DATA_DIR")
    _, _, meta = load_libsvm(path, n_features=KNOWN_DATASETS[name][1])
    assert (meta.M, meta.d) == KNOWN_DATASETS[name]
