import json

import numpy as np
import pytest

from prolate_calculus import DomainError, OperatorMatrix
from prolate_calculus.serialize import (
    dump_json,
    load_json,
    operator_from_dict,
    operator_to_csv,
    operator_to_dict,
    table_to_csv,
    table_to_dict,
)


@pytest.fixture
def random_operator(rng):
    entries = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    return OperatorMatrix(dim=6, entries=entries)


class TestOperatorRoundtrip:
    def test_bit_exact_roundtrip(self, random_operator, tmp_path):
        path = tmp_path / "op.json"
        dump_json(operator_to_dict(random_operator, {"c": 1.0}), path)
        loaded = operator_from_dict(load_json(path))
        assert np.array_equal(loaded.entries, random_operator.entries)

    def test_byte_identical_dumps(self, random_operator, tmp_path):
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        dump_json(operator_to_dict(random_operator, {"c": 1.0}), p1)
        dump_json(operator_to_dict(random_operator, {"c": 1.0}), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_schema_fields(self, random_operator):
        payload = operator_to_dict(random_operator, {"c": 2.0})
        assert payload["schema"] == "prolate-calculus/v1"
        assert payload["kind"] == "operator"
        assert payload["params"]["dim"] == 6
        assert len(payload["data"]) == 36

    def test_rejects_bad_payloads(self, random_operator):
        payload = operator_to_dict(random_operator, {})
        with pytest.raises(DomainError):
            operator_from_dict(dict(payload, schema="nope/v0"))
        with pytest.raises(DomainError):
            operator_from_dict(dict(payload, kind="table"))
        bad = dict(payload, data=payload["data"][:-1])
        with pytest.raises(DomainError):
            operator_from_dict(bad)

    def test_csv_roundtrip_exact(self, random_operator, tmp_path):
        path = tmp_path / "op.csv"
        operator_to_csv(random_operator, path)
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "row,col,re,im"
        rebuilt = np.zeros((6, 6), dtype=complex)
        for line in rows[1:]:
            i, j, re, im = line.split(",")
            rebuilt[int(i), int(j)] = float(re) + 1j * float(im)
        # 17 significant digits give exact float round-trips.
        assert np.array_equal(rebuilt, random_operator.entries)


class TestTables:
    def test_complex_columns_split(self):
        payload = table_to_dict({"ev": np.array([1 + 2j, 3 - 4j])}, {"c": 1.0})
        assert payload["data"]["ev_re"] == [1.0, 3.0]
        assert payload["data"]["ev_im"] == [2.0, -4.0]

    def test_csv_header_and_values(self, tmp_path):
        path = tmp_path / "t.csv"
        table_to_csv({"n": np.array([0, 1]), "chi": np.array([0.25, 2.5])}, path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "n,chi"
        assert lines[1] == "0,0.25"

    def test_json_is_valid_and_sorted(self, tmp_path):
        path = tmp_path / "t.json"
        dump_json(table_to_dict({"mu": np.array([0.5])}, {"c": 1.0}), path)
        payload = json.loads(path.read_text())
        assert payload["kind"] == "table"
