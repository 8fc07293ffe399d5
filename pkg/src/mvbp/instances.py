"""Small named instances used in the docs, demos and tests."""

from .model import BinType, Instance, Item


def e1() -> Instance:
    """Three items in two dimensions, a unit bin (weight 1) and a half bin (weight 0.5)."""
    return Instance(
        2,
        (
            Item.of((0.5, 0.2), (0.3, 0.4)),
            Item.of((0.4, 0.1)),
            Item.of((0.2, 0.6), (0.6, 0.2)),
        ),
        (BinType((1.0, 1.0), 1.0), BinType((0.5, 0.5), 0.5)),
    )


def halves(n: int = 4) -> Instance:
    """``n`` items of size 0.5 in one dimension, unit bins."""
    return Instance(1, tuple(Item.of((0.5,)) for _ in range(n)), (BinType((1.0,)),))


def two_families(n: int = 4) -> Instance:
    """Half the items share one type-0 bin, the other half one type-1 bin.

    Every item fits alone in either type, but two items of different
    families never share a bin, and a family packed in the other type needs
    one bin per item. Needs ``n >= 4``.
    """
    k = n // 2
    if k < 2:
        raise ValueError("need at least two items per family")
    small, big = 1.0 / k, 1.0 - 1.0 / (2 * k)
    first = tuple(Item.of((small, big)) for _ in range(k))
    second = tuple(Item.of((big, small)) for _ in range(n - k))
    return Instance(
        2,
        first + second,
        (BinType((1.0, k * big)), BinType((k * big, 1.0))),
    )
