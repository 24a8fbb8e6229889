/**************************************************************************
 * kasami.hpp
 *
 * Copyright 2026 The kasami-designs Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include "closed_form.hpp"
#include "code_family.hpp"
#include "cyclotomic_int.hpp"
#include "design.hpp"
#include "exp_sum.hpp"
#include "field_core.hpp"
#include "parallel.hpp"
#include "rng.hpp"
