import numpy as np
import pytest
from hypothesis import given, settings

from convexlab import io
from convexlab.errors import FormatError
from convexlab.generators import gen_random, gen_shatter_family
from convexlab.setcore import SetSystem
from conftest import set_systems


@settings(max_examples=50, deadline=None)
@given(set_systems(max_ground=6, max_members=5))
def test_setsystem_roundtrip(system):
    back = io.loads(io.dump(system))
    assert back == system


def test_names_survive():
    s = SetSystem(3, (0b101, 0), ("A", "B"))
    text = io.dump(s)
    assert text.splitlines() == ["convexlab-setsystem v1", "ground 3", "A 101", "B 000"]
    assert io.loads(text).names == ("A", "B")


def test_cubical_roundtrip(tmp_path):
    fam, _ = gen_shatter_family((1, 2))
    path = tmp_path / "fam.txt"
    io.save(fam, path)
    back = io.load(path)
    assert back == fam and back.names == fam.names
    cube = gen_random("boxes", {"dims": (3, 4, 2), "m": 2}, seed=1)
    assert io.loads(io.dump(cube)) == cube


@pytest.mark.parametrize("text, line, field", [
    ("", 1, "header"),
    ("bogus v9\n", 1, "header"),
    ("convexlab-setsystem v1\n", None, "ground"),
    ("convexlab-setsystem v1\nground x\n", 2, "ground"),
    ("convexlab-setsystem v1\nground 3\nA 10\n", 3, "bits"),
    ("convexlab-setsystem v1\nground 3\nA 102\n", 3, "bits"),
    ("convexlab-setsystem v1\nground 3\nA 101 extra\n", 3, "member"),
    ("convexlab-cubical v1\ndims 2\n", 2, "dims"),
    ("convexlab-cubical v1\ndims 2 2 2 2\n", 2, "dims"),
    ("convexlab-cubical v1\ndims 2 2\nA 101\n", 3, "bits"),
])
def test_malformed(text, line, field):
    with pytest.raises(FormatError) as info:
        io.loads(text)
    assert info.value.line == line and info.value.field == field


def test_points():
    assert io.loads_points(io.dump_points((0, 6, 5))) == (0, 6, 5)
    with pytest.raises(FormatError):
        io.loads_points("points 1 x\n")
    with pytest.raises(FormatError):
        io.loads_points("points 1\npoints 2\n")


def test_tables():
    table = {1: 2, 2: 4, 3: 8}
    assert io.loads_table(io.dump_table(table)) == table
    with pytest.raises(FormatError, match="increasing"):
        io.loads_table("table v1\n2 4\n1 2\n")
    with pytest.raises(FormatError):
        io.loads_table("1 2\n")
    with pytest.raises(FormatError) as info:
        io.loads_table("table v1\n1 two\n")
    assert info.value.line == 2


def test_cubical_cell_order():
    a = np.zeros((2, 3), dtype=bool)
    a[0, 2] = a[1, 0] = True
    from convexlab.homology import CubicalSetSystem
    text = io.dump(CubicalSetSystem((2, 3), (a,)))
    assert text.splitlines()[-1].endswith(" 001100")
