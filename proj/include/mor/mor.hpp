/*
 * Copyright 2026 The MOR-SL Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "mor/automorphism.hpp"
#include "mor/bigint.hpp"
#include "mor/elgamal.hpp"
#include "mor/error.hpp"
#include "mor/field.hpp"
#include "mor/matrix.hpp"
#include "mor/protocol.hpp"
#include "mor/rng.hpp"
#include "mor/security.hpp"
#include "mor/serialize.hpp"
#include "mor/words.hpp"
