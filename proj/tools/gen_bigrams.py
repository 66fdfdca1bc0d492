#!/usr/bin/env python3
# Copyright 2026 The pdcbench Authors
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
"""Regenerates data/lang/english_bigrams.txt from the wordfreq English list.

Each word w with frequency f contributes f to every letter pair of " w ",
i.e. words are modeled as separated by a single space.
"""
import argparse
import collections
import importlib.metadata

import wordfreq

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ "


def render(sym):
    return "_" if sym == " " else sym


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--words", type=int, default=50000)
    ap.add_argument("--scale", type=float, default=1e9)
    ap.add_argument("--out", default="data/lang/english_bigrams.txt")
    args = ap.parse_args()

    counts = collections.Counter()
    for word in wordfreq.top_n_list("en", args.words):
        letters = "".join(ch for ch in word.upper() if "A" <= ch <= "Z")
        if not letters:
            continue
        f = wordfreq.word_frequency(word, "en")
        s = " " + letters + " "
        for a, b in zip(s, s[1:]):
            counts[(a, b)] += f

    with open(args.out, "w") as fh:
        fh.write("# English letter-pair counts over A-Z and space ('_').\n")
        fh.write("# source: wordfreq %s, top %d English words, each word weighted\n"
                 % (importlib.metadata.version("wordfreq"), args.words))
        fh.write("# by its frequency and framed by single spaces; counts scaled by %.0e.\n" % args.scale)
        fh.write("# generated by tools/gen_bigrams.py\n")
        for a in ALPHABET:
            for b in ALPHABET:
                c = int(round(counts[(a, b)] * args.scale))
                fh.write("%s%s %d\n" % (render(a), render(b), c))


if __name__ == "__main__":
    main()
