#!/usr/bin/env python3
# Copyright 2026 The stfidf Authors
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

"""Arbitrary-precision values frozen into the unit tests."""
import mpmath as mp

mp.mp.dps = 50


def tempered(sizes, temperature):
    total = mp.fsum(mp.mpf(s) for s in sizes)
    p = [mp.mpf(s) / total for s in sizes]
    q = [x ** (mp.mpf(1) / temperature) for x in p]
    z = mp.fsum(q)
    return [x / z for x in q]


def smoothed_idf(n, df):
    return mp.log(mp.mpf(1 + n) / (1 + df)) + 1


if __name__ == "__main__":
    print("weights [81,16] T=5:", [mp.nstr(x, 20) for x in tempered([81, 16], 5)])
    print("weights [81,16] T=1:", [mp.nstr(x, 20) for x in tempered([81, 16], 1)])
    print("weights [1,10,100,1000] T=2:", [mp.nstr(x, 20) for x in tempered([1, 10, 100, 1000], 2)])
    a = smoothed_idf(2, 1)
    print("idf N=2 df=1:", mp.nstr(a, 20))
    w = [2 * a, smoothed_idf(2, 2)]
    norm = mp.sqrt(mp.fsum(x * x for x in w))
    print("vectorize [a,a,b]:", [mp.nstr(x / norm, 20) for x in w])
