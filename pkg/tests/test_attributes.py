import random

import numpy as np
import pytest

from sociogen.attributes import (
    AttributeSchema,
    NodeProfile,
    assign_profiles,
    attribute_columns,
    categorical_distance,
    demographic_distance,
    demographic_distance_vector,
    load_schemas,
    numerical_distance,
    ordinal_distance,
    read_profiles,
    save_schemas,
    write_profiles,
)


def test_categorical_distance():
    assert categorical_distance("school1", "school1") == 0
    assert categorical_distance("school1", "school2") == 1
    assert categorical_distance("B", "B") == 0


def test_ordinal_distance():
    assert ordinal_distance(1, 3, 4) == 0.5
    assert ordinal_distance(2, 2, 4) == 0
    assert ordinal_distance(0, 4, 4) == 1
    with pytest.raises(ValueError):
        ordinal_distance(1, 2, 0)


def test_numerical_distance():
    assert numerical_distance(18, 22, 8) == 0.5
    assert numerical_distance(7, 7, 3) == 0
    assert numerical_distance(0, 8, 8) == 1


def two_schemas():
    return [
        AttributeSchema("town", "categorical", ("x", "y"), (1, 1)),
        AttributeSchema("age", "numerical", tuple(range(18, 27)), (1,) * 9, rho=8.0),
    ]


def test_demographic_distance_identical_is_zero():
    schemas = two_schemas()
    p = NodeProfile(("x", 20))
    assert demographic_distance(p, p, schemas) == 0


def test_demographic_distance_both_categorical_different():
    schemas = [
        AttributeSchema("a", "categorical", ("u", "v"), (1, 1)),
        AttributeSchema("b", "categorical", ("u", "v"), (1, 1)),
    ]
    assert demographic_distance(NodeProfile(("u", "u")), NodeProfile(("v", "v")), schemas) == 1


def test_demographic_distance_mixed():
    # categorical differs (1) plus numerical at half range (0.5), equal
    # weights: hand-summed weighted mean = 0.75
    schemas = two_schemas()
    d = demographic_distance(NodeProfile(("x", 18)), NodeProfile(("y", 22)), schemas)
    assert d == pytest.approx(0.75)


def test_demographic_distance_rejects_all_zero_weights():
    schemas = [AttributeSchema("a", "categorical", ("u", "v"), (1, 1), weight=0.0)]
    with pytest.raises(ValueError):
        demographic_distance(NodeProfile(("u",)), NodeProfile(("v",)), schemas)


def test_demographic_distance_weight_scaling_invariance():
    rng = random.Random(5)
    base = two_schemas()
    scaled = [
        AttributeSchema(s.name, s.kind, s.levels, s.proportions, s.rho, s.weight * 7.5)
        for s in base
    ]
    for _ in range(25):
        p = NodeProfile((rng.choice(("x", "y")), rng.randint(18, 26)))
        q = NodeProfile((rng.choice(("x", "y")), rng.randint(18, 26)))
        assert demographic_distance(p, q, base) == pytest.approx(
            demographic_distance(p, q, scaled)
        )
        # symmetry and range
        d = demographic_distance(p, q, base)
        assert d == demographic_distance(q, p, base)
        assert 0 <= d <= 1


def test_assign_profiles_law_of_large_numbers():
    schemas = [AttributeSchema("k", "categorical", ("A", "B"), (1, 1))]
    profiles = assign_profiles(schemas, 10_000, random.Random(123))
    count_a = sum(1 for p in profiles if p[0] == "A")
    assert 10_000 * 0.48 <= count_a <= 10_000 * 0.52


def test_assign_profiles_degenerate_proportion():
    schemas = [AttributeSchema("k", "categorical", ("A", "B"), (1, 0))]
    profiles = assign_profiles(schemas, 5, random.Random(1))
    assert all(p[0] == "A" for p in profiles)


def test_assign_profiles_deterministic():
    schemas = two_schemas()
    a = assign_profiles(schemas, 50, random.Random(99))
    b = assign_profiles(schemas, 50, random.Random(99))
    assert a == b


def test_assign_profiles_validates():
    with pytest.raises(ValueError):
        assign_profiles(two_schemas(), 0, random.Random(0))
    with pytest.raises(ValueError):
        assign_profiles([], 5, random.Random(0))


def test_schema_validation():
    with pytest.raises(ValueError):
        AttributeSchema("a", "categorical", ("u", "v"), (1,))
    with pytest.raises(ValueError):
        AttributeSchema("a", "numerical", (0, 10), (1, 1), rho=5.0)  # rho < span
    with pytest.raises(ValueError):
        AttributeSchema("a", "weird", ("u",), (1,))
    with pytest.raises(ValueError):
        AttributeSchema("a", "categorical", ("u", "v"), (0, 0))


def test_numerical_rho_defaults_to_span():
    schema = AttributeSchema("age", "numerical", (18, 19, 20), (1, 1, 1))
    assert schema.rho == 2.0


def test_schema_file_roundtrip(tmp_path):
    schemas = [
        AttributeSchema("group", "categorical", ("A", "B", "C"), (0.2, 0.3, 0.5)),
        AttributeSchema("rank", "ordinal", (1, 2, 3, 4), (1, 1, 1, 1), rho=3.0, weight=2.0),
        AttributeSchema("age", "numerical", tuple(range(18, 23)), (1,) * 5),
    ]
    target = tmp_path / "demo.schema"
    save_schemas(target, schemas)
    back = load_schemas(target)
    assert back == schemas


def test_schema_file_min_max_expansion(tmp_path):
    target = tmp_path / "span.schema"
    target.write_text("[age]\nkind = numerical\nmin = 10\nmax = 12\n")
    (schema,) = load_schemas(target)
    assert schema.levels == (10, 11, 12)
    assert schema.proportions == (1.0, 1.0, 1.0)
    assert schema.rho == 2.0


def test_profiles_file_roundtrip(tmp_path):
    schemas = two_schemas()
    profiles = assign_profiles(schemas, 40, random.Random(3))
    target = tmp_path / "profiles.csv"
    write_profiles(target, profiles, schemas)
    back = read_profiles(target, schemas)
    assert back == profiles


def test_profiles_file_rejects_ragged(tmp_path):
    target = tmp_path / "ragged.csv"
    target.write_text("a,b\n1,2\n3\n")
    with pytest.raises(ValueError):
        read_profiles(target)


def test_vectorized_distance_matches_scalar():
    rng = random.Random(17)
    schemas = [
        AttributeSchema("c", "categorical", ("p", "q", "r"), (1, 2, 1), weight=1.5),
        AttributeSchema("o", "ordinal", (0, 1, 2, 3), (1, 1, 1, 1), rho=3.0, weight=0.5),
        AttributeSchema("n", "numerical", tuple(range(10)), (1,) * 10, rho=9.0),
    ]
    profiles = assign_profiles(schemas, 60, rng)
    columns = attribute_columns(profiles, schemas)
    for node in (5, 30, 59):
        vec = demographic_distance_vector(columns, node, node)
        for other in range(node):
            assert vec[other] == pytest.approx(
                demographic_distance(profiles[node], profiles[other], schemas), abs=1e-12
            )
