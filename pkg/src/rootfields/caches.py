"""Registry of memoization caches, so deterministic-replay tests can
reset every cache in one call."""

_CLEARERS = []


def register(clear_fn):
    _CLEARERS.append(clear_fn)
    return clear_fn


def clear_all() -> None:
    for fn in _CLEARERS:
        fn()
