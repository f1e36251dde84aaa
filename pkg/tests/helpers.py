"""Small shared helpers for the test modules."""

from fractions import Fraction


def F(*labels_groups, m):
    """Flats from label strings: F("0", "123", m=m)."""
    return [m.mask(g) for g in labels_groups]


def size_weights(b):
    """c_X = (|E| - |X|) |X|."""
    n = b.matroid.n
    return {x: Fraction((n - bin(x).count("1")) * bin(x).count("1")) for x in b.members}


def weights_31(b):
    m = b.matroid
    return {m.mask("0"): 3, m.mask("1"): 1, m.mask("2"): 1, m.mask("3"): 1, m.mask("123"): -3}
