#pragma once

#include "dwsplit/model.hpp"
#include "dwsplit/perturbation.hpp"
#include "dwsplit/quadrature.hpp"
#include "dwsplit/reproduce.hpp"
#include "dwsplit/semiclassics.hpp"
#include "dwsplit/spectral.hpp"
#include "dwsplit/validation.hpp"
