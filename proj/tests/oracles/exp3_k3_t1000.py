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

# Independent check of the Exp3 mixture at k = 3, t = 1000, cum_est = (100, 0, 0).
from mpmath import mp, mpf, sqrt, log, exp

mp.dps = 40
k, t = 3, 1000
gamma = min(sqrt(k * log(k) / t), mpf(1))
rho = sqrt(2 * log(k) / (t * k))
w = [exp(rho * c) for c in (100, 0, 0)]
soft = [wi / sum(w) for wi in w]
x = [gamma / k + (1 - gamma) * s for s in soft]
print("gamma", mp.nstr(gamma, 17))
print("rho", mp.nstr(rho, 17))
print("x", [mp.nstr(v, 17) for v in x])
