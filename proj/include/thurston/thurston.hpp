// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "thurston/curves.hpp"
#include "thurston/error.hpp"
#include "thurston/field.hpp"
#include "thurston/geometry.hpp"
#include "thurston/isometry.hpp"
#include "thurston/isoptic.hpp"
#include "thurston/marching_cubes.hpp"
#include "thurston/mesh.hpp"
#include "thurston/scenario.hpp"
