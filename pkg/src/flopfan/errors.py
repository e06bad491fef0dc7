import os


class ResourceCapExceeded(RuntimeError):
    """An enumeration hit its configured size limit."""


class NotAHeartCone(ValueError):
    """The cone is not the heart cone of any intermediate heart."""


def default_cap() -> int:
    return int(os.environ.get("FLOPFAN_MAX_CHAMBERS", "100000"))
