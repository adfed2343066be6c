# coding: utf-8
##########################################################################
# NSAp - Copyright (C) CEA, 2022
# Distributed under the terms of the CeCILL-B license, as published by
# the CEA-CNRS-INRIA. Refer to the LICENSE file or to
# http://www.cecill.info/licences/Licence_CeCILL-B_V1-en.html
# for details.
##########################################################################

"""
Utility methods to print the results in a terminal using term colors.
"""

# Imports
import os
import platform


IS_WINDOWS = platform.system() == "Windows"
COLOR_TERMS = ["xterm-256color", "cygwin", "xterm-color"]
IS_COLOR_TERM = "TERM" in os.environ and (
    os.environ["TERM"] in COLOR_TERMS or (
        os.environ["TERM"] == "xterm" and not IS_WINDOWS
    )
)
ESC = "\x1b["
END = "m"

# xterm 256 codes of the colors used by the print helpers
XTERM_CODES = {
    "red": 1,
    "white": 15,
    "orange_4b": 94,
    "gold_3b": 178,
    "pink_3": 175}
ATTRIBUTES = {
    "reset": 0,
    "bold": 1}

# Dictionary of term colors used for printing to terminal
fg_colors = {
    "title": "gold_3b",
    "subtitle": "orange_4b",
    "result": "pink_3",
    "error": "red",
    "text": "white"}


def stylize(text, styles, reset=True):
    """ Conveniently styles your text as and resets ANSI codes at its end.
    """
    terminator = attr("reset") if reset else ""
    return "{}{}{}".format("".join(styles), text, terminator)


def fg(color):
    """ 256 colors foreground escape sequence.
    """
    if color not in XTERM_CODES:
        raise ValueError(f"Unknown color '{color}'.")
    return f"{ESC}38;5;{XTERM_CODES[color]}{END}"


def attr(name):
    """ Attribute escape sequence.
    """
    if name not in ATTRIBUTES:
        raise ValueError(f"Unknown attribute '{name}'.")
    return f"{ESC}{ATTRIBUTES[name]}{END}"


def _print(text, kind, extra=""):
    if IS_COLOR_TERM:
        text = stylize(text, fg(fg_colors[kind]) + extra)
    print(text)


def print_title(title):
    _print(title, "title", extra=attr("bold"))


def print_subtitle(title):
    _print(title, "subtitle")


def print_result(result):
    _print(result, "result")


def print_error(error):
    _print(error, "error")


def print_text(text):
    _print(text, "text")
