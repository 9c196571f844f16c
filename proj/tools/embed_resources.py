#!/usr/bin/env python3
"""Regenerates include/decept/resources.hpp from the files under data/."""
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
FILES = [
    ("function_words", "function_words.txt"),
    ("abbreviations", "abbreviations.txt"),
    ("contractions", "contractions.txt"),
    ("demo_dictionary", "demo_dictionary.dic"),
]
HEADER = (ROOT / "include/decept/common.hpp").read_text().split("#pragma once")[0]

parts = [HEADER, "// Generated by tools/embed_resources.py; edit the files in data/ instead.\n\n",
         "#pragma once\n\n#include <string_view>\n\nnamespace decept::resources {\n\n"]
for name, fname in FILES:
    body = (ROOT / "data" / fname).read_text()
    parts.append(f"inline constexpr std::string_view {name} = R\"DECEPT({body})DECEPT\";\n\n")
parts.append("}  // namespace decept::resources\n")
(ROOT / "include/decept/resources.hpp").write_text("".join(parts))
