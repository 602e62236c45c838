/*
   Copyright 2026 The npc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "npc/abelian.hpp"
#include "npc/blocks.hpp"
#include "npc/building.hpp"
#include "npc/distortion.hpp"
#include "npc/dot.hpp"
#include "npc/error.hpp"
#include "npc/extension.hpp"
#include "npc/factor.hpp"
#include "npc/field.hpp"
#include "npc/field_desc.hpp"
#include "npc/fixtures.hpp"
#include "npc/fp.hpp"
#include "npc/io.hpp"
#include "npc/matrix.hpp"
#include "npc/parse.hpp"
#include "npc/poly.hpp"
#include "npc/ratfunc.hpp"
#include "npc/rational.hpp"
#include "npc/spectrum.hpp"
#include "npc/valuation.hpp"
