# Copyright 2026 The mgl Authors
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

"""Exit status contract: 0 success, 2 invalid flags, 1 runtime failure."""
import subprocess
import sys
import tempfile
from pathlib import Path

exe, out = sys.argv[1], Path(sys.argv[2])
with tempfile.TemporaryDirectory() as tmp:
    blocker = Path(tmp) / "not_a_dir"
    blocker.write_text("x")
    cases = [
        ([], 2),
        (["--help"], 0),
        (["rps-selfplay", "--bogus"], 2),
        (["rps-selfplay", "--horizon", "abc"], 2),
        (["rps-selfplay", "--horizon", "0", "--seeds", "1"], 2),
        (["rps-selfplay", "--agent", "sarsa", "--seeds", "1"], 2),
        (["robust-bandit", "--opponent", "fixed", "--seeds", "1"], 2),
        (["custom", "--matrix", "1,x;0,1", "--seeds", "1"], 2),
        (["custom", "--config", str(Path(tmp) / "missing.json")], 2),
        (["rps-selfplay", "--seeds", "1", "--horizon", "5", "--out", str(blocker / "sub")], 1),
        (["custom", "--matrix", "1,-1;-1,1", "--agent", "ucb", "--opponent", "fixed",
          "--strategy", "0.5,0.5", "--seeds", "2", "--horizon", "20", "--out", str(out)], 0),
    ]
    bad = 0
    for args, want in cases:
        got = subprocess.run([exe, *args], capture_output=True).returncode
        status = "ok" if got == want else "FAIL"
        bad += got != want
        print(f"{status}: {' '.join(args) or '(no args)'} -> {got} (want {want})")
sys.exit(1 if bad else 0)
