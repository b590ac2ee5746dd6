# Copyright 2026 The Authors.
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

import itertools
import os

import pytest

import billboard_select as bs

DATA = os.environ.get(
    "BILLBOARD_TEST_DATA",
    os.path.join(os.path.dirname(__file__), "..", "data"))


@pytest.fixture(scope="module")
def small():
  return bs.generate_synthetic(users=50, billboards=2, tags=3, tuples=200,
                               t2=29, seed=4)


def brute_force(inst, k, l):
  best = 0.0
  for slots in itertools.combinations(range(inst.num_slots), k):
    for tags in itertools.combinations(range(inst.num_tags), l):
      best = max(best, bs.influence(inst, list(slots), list(tags)))
  return best


def test_generate_is_deterministic(small):
  again = bs.generate_synthetic(users=50, billboards=2, tags=3, tuples=200,
                                t2=29, seed=4)
  assert again.digest() == small.digest()
  assert len(small.digest()) == 64
  assert small.num_slots == 6
  assert small.slot_billboards == [0, 0, 0, 1, 1, 1]


def test_influence_matches_definition(small):
  slots, tags = [0, 4], [1, 2]
  expected = 0.0
  for u in range(small.num_users):
    stay = 1.0
    for s in slots:
      for c in tags:
        stay *= 1.0 - small.prob(u, s, c)
    expected += 1.0 - stay
  assert bs.influence(small, slots, tags) == pytest.approx(expected, abs=1e-9)
  assert bs.influence(small, [], [0]) == 0.0
  with pytest.raises(bs.ValidationError):
    bs.influence(small, [99], [0])


def test_solvers_agree_with_brute_force(small):
  opt = brute_force(small, 3, 2)
  exact = bs.exhaustive(small, 3, 2)
  assert exact.influence == pytest.approx(opt, abs=1e-9)
  for result in (bs.greedy(small, 3, 2), bs.greedy(small, 3, 2, lazy=False),
                 bs.stochastic_greedy(small, 3, 2, epsilon=0.1, seed=7)):
    assert len(result.slots) == 3 and len(result.tags) == 2
    assert result.influence <= opt + 1e-9
    assert result.influence == pytest.approx(
        bs.influence(small, result.slots, result.tags), abs=1e-9)
  lazy, incremental = bs.greedy(small, 3, 2), bs.greedy(small, 3, 2, False)
  assert lazy.slots == incremental.slots and lazy.tags == incremental.tags


def test_baselines(small):
  assert set(bs.BASELINES) == {"RSRT", "RSHFT", "MAXSRT", "TSTT", "TSRT",
                               "RSTT"}
  for name in bs.BASELINES:
    result = bs.baseline(small, name, 2, 1, seed=3)
    assert len(result.slots) == 2 and len(result.tags) == 1
  with pytest.raises(bs.BillboardError):
    bs.baseline(small, "NOPE", 2, 1)


def test_errors(small):
  with pytest.raises(bs.InfeasibleError):
    bs.greedy(small, 7, 1)
  with pytest.raises(bs.CapExceededError):
    bs.exhaustive(small, 3, 2, cap=5)
  with pytest.raises(bs.ValidationError):
    bs.generate_synthetic(tags=0)
  with pytest.raises(bs.ParseError):
    bs.load_instance(os.path.join(DATA, "tags.csv"))
  assert issubclass(bs.InfeasibleError, bs.BillboardError)


def test_solve_record_and_round_trip(small, tmp_path):
  record = bs.solve(small, "greedy-lazy", 2, 1)
  assert record["algorithm"] == "greedy-lazy"
  assert record["instance_digest"] == small.digest()
  assert len(record["selected_slots"]) == 2

  path = str(tmp_path / "inst.json")
  bs.save_instance(small, path)
  loaded = bs.load_instance(path)
  assert loaded.digest() == small.digest()
  assert bs.load_instance(os.path.join(DATA, "instance.json")).num_tags > 0
