# Copyright 2026 The Tablewright Authors
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

"""Compile trained models into match/action pipeline programs."""

from ._tablewright import (
    FULL_PRECISION_BITS,
    BudgetError,
    Error,
    IoError,
    ModelSpec,
    Program,
    ValidationError,
    convert,
    load_model_spec,
    load_program,
    parse_model_spec,
    supported_variants,
)

__all__ = [
    "FULL_PRECISION_BITS",
    "BudgetError",
    "Error",
    "IoError",
    "ModelSpec",
    "Program",
    "ValidationError",
    "convert",
    "load_model_spec",
    "load_program",
    "parse_model_spec",
    "supported_variants",
]
