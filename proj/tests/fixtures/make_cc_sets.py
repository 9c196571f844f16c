#!/usr/bin/env python3
# Copyright 2026 The decept-cue Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds one FeatureSet JSON per domain from a transcribed shared-feature table.

Each domain receives every feature listed on a row whose subset contains it.
Features unique to a single domain never appear in the tables, so they are
left out; they cannot change any row.
"""
import csv
import json
import pathlib

DOMAINS = ["F", "J", "P", "Pr", "Ps"]
ROOT = pathlib.Path(__file__).resolve().parents[2] / "data" / "fixtures" / "cc"

for table in ("fw", "pos", "ling"):
    sets = {d: set() for d in DOMAINS}
    with open(ROOT / f"{table}_expected.csv", newline="") as f:
        for row in csv.DictReader(f):
            members = DOMAINS if row["subset"] == "All" else [s.strip() for s in row["subset"].split(",")]
            for feat in (x.strip() for x in row["features"].split(",")):
                for d in members:
                    sets[d].add(feat)
    out = ROOT / table
    out.mkdir(exist_ok=True)
    for d in DOMAINS:
        doc = {"domain": d, "names": sorted(sets[d], key=lambda s: (s.lower(), s))}
        (out / f"{d}.json").write_text(json.dumps(doc, indent=2) + "\n")
