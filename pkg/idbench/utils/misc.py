"""Miscellaneous utilities"""
import logging

__all__ = ["set_debug", "is_debug"]


def is_debug() -> bool:
    """Whether the debug logs are being shown in stdout"""
    return logging.getLogger("idbench").level == logging.DEBUG


def set_debug(debug: bool) -> None:
    """Show or hide the debug logs of every idbench module

    :param debug: Whether debug logs should be shown in stdout
    """
    logging.basicConfig()
    level = logging.DEBUG if debug else logging.NOTSET
    logging.getLogger("idbench").setLevel(level)
