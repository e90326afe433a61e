#!/usr/bin/env python3
# Copyright 2026 The hf0 Authors
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
"""Offline design of the pitch-band elliptic filterbank.

Writes three artifacts:
  core/src/filterbank_coefficients.inc   embedded coefficient table
  docs/filterbank_coefficients.txt       human-readable audit copy
  tests/data/filterbank_response.csv     magnitude response probes (test oracle)

Run from the repository root:  python3 tools/scripts/design_filterbank.py
"""

import os

import numpy as np
from scipy import signal

SAMPLE_RATE = 16000
EDGES = [50, 75, 100, 150, 200, 300, 400, 600, 800]
ORDER = 4
RIPPLE_DB = 0.5
STOPBAND_DB = 40.0


def design(lo, hi):
    sos = signal.ellip(ORDER, RIPPLE_DB, STOPBAND_DB, [lo, hi],
                       btype="bandpass", output="sos", fs=SAMPLE_RATE)
    # Pull each section's b0 into one overall gain so the table stores
    # monic numerators.
    gain = 1.0
    sections = []
    for s in sos:
        b = s[:3]
        a = s[3:]
        assert abs(a[0] - 1.0) < 1e-15
        gain *= b[0]
        sections.append((1.0, b[1] / b[0], b[2] / b[0], a[1], a[2]))
    return gain, sections, sos


def probe_frequencies(lo, hi):
    fixed = [lo, hi, np.sqrt(lo * hi), lo / 2.0, hi * 2.0,
             (lo + hi) / 2.0, lo * 1.01, hi * 0.99]
    sweep = np.geomspace(20.0, 4000.0, 24)
    return list(fixed) + list(sweep)


def main():
    root = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
    inc_lines = [
        "// Generated by tools/scripts/design_filterbank.py. Do not edit.",
        "// scipy.signal.ellip(%d, %.1f dB, %.1f dB, band, 'bandpass', fs=%d)"
        % (ORDER, RIPPLE_DB, STOPBAND_DB, SAMPLE_RATE),
        "// Row layout: gain, then per section {b0, b1, b2, a1, a2}.",
    ]
    txt_lines = [
        "hf0 pitch-band filterbank",
        "elliptic band-pass, design order %d, passband ripple %.1f dB, "
        "stopband attenuation %.1f dB, fs = %d Hz" % (ORDER, RIPPLE_DB, STOPBAND_DB, SAMPLE_RATE),
        "sections are y = gain * cascade(b0 + b1 z^-1 + b2 z^-2) / (1 + a1 z^-1 + a2 z^-2)",
        "",
    ]
    csv_lines = ["band,freq_hz,magnitude_db"]
    for i in range(8):
        lo, hi = EDGES[i], EDGES[i + 1]
        gain, sections, sos = design(lo, hi)
        inc_lines.append("{%.17g, {{" % gain)
        for j, s in enumerate(sections):
            sep = "," if j + 1 < len(sections) else ""
            inc_lines.append(" {%s}%s" % (", ".join("%.17g" % c for c in s), sep))
        inc_lines.append("}}}," if i < 7 else "}}}")
        txt_lines.append("s%d [%d, %d) Hz  gain=%.17g" % (i + 1, lo, hi, gain))
        for j, s in enumerate(sections):
            poles = np.roots([1.0, s[3], s[4]])
            txt_lines.append("  section %d: b = [%.17g, %.17g, %.17g]  a = [1, %.17g, %.17g]  |pole| = %.9f"
                             % (j, s[0], s[1], s[2], s[3], s[4], np.max(np.abs(poles))))
        freqs = probe_frequencies(lo, hi)
        _, h = signal.sosfreqz(sos, worN=freqs, fs=SAMPLE_RATE)
        for f, v in zip(freqs, h):
            csv_lines.append("%d,%.9f,%.9f" % (i + 1, f, 20.0 * np.log10(abs(v))))

    with open(os.path.join(root, "core/src/filterbank_coefficients.inc"), "w") as fh:
        fh.write("\n".join(inc_lines) + "\n")
    with open(os.path.join(root, "docs/filterbank_coefficients.txt"), "w") as fh:
        fh.write("\n".join(txt_lines) + "\n")
    with open(os.path.join(root, "tests/data/filterbank_response.csv"), "w") as fh:
        fh.write("\n".join(csv_lines) + "\n")


if __name__ == "__main__":
    main()
