"""Small helpers for reading verifier reports in tests."""


def checked_tiles(doc):
    """Report entries of the tiles that were verified, keyed by id."""
    return {t["id"]: t for t in doc["tiles"] if not t["fixed"]}


def blocked_at(entry, name):
    return next(o["blocked_at"] for o in entry["block"]["samples"] if o["sample"] == name)
