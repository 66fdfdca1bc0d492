# Copyright 2026 The pdcbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Python access to the pdcbench core: bit strings, metrics, ciphers and recipes."""

from ._pdcbench import (
    BitString,
    CipherSpec,
    ConfigError,
    decode_text,
    decrypt,
    default_threshold,
    distance,
    encode_text,
    encrypt,
    is_plausible,
    metric_names,
    plausibility_score,
    recipe_config,
    recipes,
    run_recipe,
    sphere_size,
    unicity_distance,
)

__all__ = [
    "BitString",
    "CipherSpec",
    "ConfigError",
    "decode_text",
    "decrypt",
    "default_threshold",
    "distance",
    "encode_text",
    "encrypt",
    "is_plausible",
    "metric_names",
    "plausibility_score",
    "recipe_config",
    "recipes",
    "run_recipe",
    "sphere_size",
    "unicity_distance",
]
