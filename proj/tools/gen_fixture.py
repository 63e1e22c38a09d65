#!/usr/bin/env python3
#
# Copyright 2026 The dpq Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Writes the synthetic sensor-style CSV used by tests and examples.

Two skewed columns stand in for the real-world datasets, which are not
redistributed: trip durations (log-normal, seconds) and a bounded sensor
reading. Output is deterministic.
"""

import argparse
import csv
import random


def main():
  parser = argparse.ArgumentParser(description=__doc__)
  parser.add_argument("--rows", type=int, default=10000)
  parser.add_argument("--seed", type=int, default=20260)
  parser.add_argument("out")
  args = parser.parse_args()

  rng = random.Random(args.seed)
  with open(args.out, "w", newline="") as f:
    w = csv.writer(f, lineterminator="\n")
    w.writerow(["id", "duration_s", "reading"])
    for i in range(args.rows):
      duration = min(rng.lognormvariate(6.3, 0.7), 36000.0)
      reading = min(max(rng.gauss(400.0, 60.0), 0.0), 1000.0)
      w.writerow([i, f"{duration:.1f}", f"{reading:.3f}"])


if __name__ == "__main__":
  main()
