import pytest

from multired.presentation import (
    PresentationError,
    PresentationSyntaxError,
    UnknownPreset,
    ValidationFailure,
    format_presentation,
    parse_presentation,
    preset,
    validate,
)


def test_parse_att():
    p = parse_presentation("atoms: a b c\nrel: aba = bab\nrel: bcb = cbc\nrel: cac = aca\n")
    assert p.atom_names == ("a", "b", "c")
    assert len(p.relations) == 3
    assert validate(p).artin_tits


def test_parse_free_monoid():
    p = parse_presentation("atoms: a\n")
    assert p.n_atoms == 1 and p.relations == ()


def test_parse_rejects_identical_starts():
    with pytest.raises(ValidationFailure):
        parse_presentation("atoms: a b\nrel: ab = ab\n")


def test_parse_comments_and_errors():
    p = parse_presentation("# heading\natoms: a b\n# mid\nrel: ab = ba\n")
    assert len(p.relations) == 1
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("rel: ab = ba\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("atoms: a b\nrel: ab ba\n")
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("atoms: a b\nnonsense\n")


def test_validate_reports():
    p = parse_presentation("atoms: a b c\nrel: aba = bab\nrel: bcb = cbc\nrel: cac = aca\n")
    report = validate(p)
    assert report.ok and report.artin_tits
    # duplicate pair {a,b}
    from multired.presentation import AtomId, Presentation

    dup = Presentation(
        "dup",
        (AtomId(0, "a"), AtomId(1, "b")),
        (((0, 1), (1, 0)), ((0, 0, 1), (0, 1, 0))),
    )
    rep = validate(dup)
    assert not rep.check("pair_uniqueness").passed
    uneven = Presentation("odd", (AtomId(0, "a"), AtomId(1, "b")), (((0, 1), (1,)),))
    assert not validate(uneven).check("homogeneous").passed


def test_presets():
    att = preset("A2tilde")
    assert att.n_atoms == 3 and len(att.relations) == 3
    b3 = preset("braid(3)")
    assert b3.n_atoms == 2 and len(b3.relations) == 1 and b3.fc
    assert preset("braid3").relations == b3.relations
    k43 = preset("K(4,3)")
    assert k43.n_atoms == 4 and len(k43.relations) == 6
    assert all(len(l) == 3 for l, _ in k43.relations)
    assert preset("free(2)").relations == ()
    i25 = preset("I2(5)")
    assert len(i25.relations[0][0]) == 5
    a3t = preset("A3tilde")
    assert a3t.n_atoms == 4 and len(a3t.relations) == 6
    c2t = preset("C2tilde")
    assert max(len(l) for l, _ in c2t.relations) == 4
    with pytest.raises(UnknownPreset):
        preset("nope")
    with pytest.raises(UnknownPreset):
        preset("braid(1)")
    for name in ("A2tilde", "braid(4)", "K(4,3)", "free(3)", "I2(2)", "A3tilde", "C2tilde"):
        assert validate(preset(name)).ok, name


def test_roundtrip():
    for name in ("A2tilde", "braid(4)", "K(4,3)", "free(2)", "C2tilde"):
        p = preset(name)
        again = parse_presentation(format_presentation(p), name=p.name)
        assert again.atom_names == p.atom_names
        assert again.relations == p.relations


def test_preset_a2tilde_equals_k33():
    assert preset("A2tilde").relations == preset("K(3,3)").relations
