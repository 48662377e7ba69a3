import numpy as np
import pytest

from dataio import CsvSchema, load_external, load_trial, read_header, write_trial
from errors import DataParseError


SCHEMA = CsvSchema(covariate_cols=("x1", "x2"))


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_load_trial(tmp_path):
    path = _write(
        tmp_path / "trial.csv",
        "y,a,stratum,x1,x2,notes\n"
        "1.5,1,north,0.1,2,a\n"
        "2.5,0,south,0.2,3,b\n"
        "3.5,0,north,0.3,4,c\n"
        "4.5,1,south,0.4,5,d\n",
    )
    trial = load_trial(path, SCHEMA)
    assert trial.n == 4
    assert trial.stratum_names == ("north", "south")
    np.testing.assert_array_equal(trial.stratum, [1, 2, 1, 2])
    np.testing.assert_array_equal(trial.a, [1, 0, 0, 1])
    np.testing.assert_allclose(trial.x[:, 1], [2, 3, 4, 5])
    assert trial.covariate_names == ("x1", "x2")


@pytest.mark.parametrize(
    "body, row, column",
    [
        ("1.0,1,s,abc,1\n", 1, "x1"),
        ("1.0,1,s,0,1\n2.0,2,s,0,1\n", 2, "a"),
        ("1.0,1,s,0,1\n2.0,0,s,,1\n", 2, "x1"),
        ("inf,1,s,0,1\n", 1, "y"),
    ],
)
def test_parse_errors_name_the_cell(tmp_path, body, row, column):
    path = _write(tmp_path / "bad.csv", "y,a,stratum,x1,x2\n" + body)
    with pytest.raises(DataParseError) as error:
        load_trial(path, SCHEMA)
    assert error.value.row == row
    assert error.value.column == column


def test_missing_column_and_empty_files(tmp_path):
    with pytest.raises(DataParseError) as error:
        load_trial(_write(tmp_path / "a.csv", "y,a,stratum,x1\n1,1,s,0\n"), SCHEMA)
    assert error.value.column == "x2"
    with pytest.raises(DataParseError):
        load_trial(_write(tmp_path / "b.csv", "y,a,stratum,x1,x2\n"), SCHEMA)
    with pytest.raises(DataParseError):
        load_trial(_write(tmp_path / "c.csv", ""), SCHEMA)
    with pytest.raises(DataParseError):
        load_trial(tmp_path / "missing.csv", SCHEMA)


def test_write_then_load_preserves_values(tmp_path, make_trial):
    trial = make_trial(n=40, num_strata=3, p=2)
    path = tmp_path / "out.csv"
    write_trial(trial, path, SCHEMA)
    loaded = load_trial(path, SCHEMA)
    np.testing.assert_array_equal(loaded.y, trial.y)
    np.testing.assert_array_equal(loaded.x, trial.x)
    np.testing.assert_array_equal(loaded.stratum, trial.stratum)
    with pytest.raises(DataParseError):
        write_trial(trial, path, CsvSchema(covariate_cols=("x1",)))


def test_read_header(tmp_path):
    path = _write(tmp_path / "h.csv", "y, a, stratum, income\n1,0,s,2\n")
    assert read_header(path) == ("y", "a", "stratum", "income")


def test_load_external(tmp_path):
    path = _write(tmp_path / "ext.csv", "y,x1,other\n1.0,2.0,z\n3.0,4.0,z\n")
    x, y = load_external(path, "y", ("x1",))
    np.testing.assert_array_equal(x, [[2.0], [4.0]])
    np.testing.assert_array_equal(y, [1.0, 3.0])


def test_schema_validation():
    with pytest.raises(DataParseError):
        CsvSchema(covariate_cols=())
    with pytest.raises(DataParseError):
        CsvSchema(covariate_cols=("y",))
