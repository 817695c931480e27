#
#   Copyright 2026 The relic authors
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

"""Relations, programs, ordered algebras and representation games."""

from ._relic import (
    BudgetExceeded,
    ConsistencyError,
    Error,
    ParseError,
    ValidationError,
    check_class,
    check_law,
    enumerate_small,
    eval_term,
    hoare_check,
    nonrep_search,
    play_script,
    replay,
    represent,
    set_self_check,
    verify_game_lemmas,
)

__all__ = [
    "BudgetExceeded",
    "ConsistencyError",
    "Error",
    "ParseError",
    "ValidationError",
    "check_class",
    "check_law",
    "enumerate_small",
    "eval_term",
    "hoare_check",
    "nonrep_search",
    "play_script",
    "replay",
    "represent",
    "set_self_check",
    "verify_game_lemmas",
]
