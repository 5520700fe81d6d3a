import properties

from rtmpi.pi import bound_names, parse_pi


def test_normalization_is_idempotent_and_preserves_behaviour():
    assert properties.normalization() == []


def test_transitions_are_alpha_invariant():
    assert properties.alpha_invariance() == []


def test_substitution_laws():
    assert properties.substitution_laws() == []


def test_tau_prefix_is_inert():
    assert properties.tau_inertness() == []


def test_restriction_and_parallel_preserve_equivalence():
    assert properties.compatibility() == []


def test_degree_is_constant_on_classes():
    assert properties.degree_constancy() == []


def test_renaming_changes_binders():
    p = parse_pi("(v z)x?(y).y!z.0")
    q = properties.rename_binders(p)
    assert bound_names(q).isdisjoint(bound_names(p))
