#pragma once

#include "gmorita/error.hpp"
#include "gmorita/scalar.hpp"
#include "gmorita/matrix.hpp"
#include "gmorita/det_poly.hpp"
#include "gmorita/group.hpp"
#include "gmorita/report.hpp"
#include "gmorita/graded_algebra.hpp"
#include "gmorita/graded_module.hpp"
#include "gmorita/over_c.hpp"
#include "gmorita/morita.hpp"
#include "gmorita/io.hpp"
