"""Checked-in field records."""

from importlib import resources

FIELDS_LT_1E5 = "quintic_fields_disc_lt_1e5.txt"
DISC_14641 = "disc14641.txt"


def path(name: str):
    return resources.files(__name__).joinpath(name)


def read_text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")
