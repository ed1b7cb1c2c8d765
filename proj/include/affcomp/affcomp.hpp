#pragma once

#include <affcomp/algebra.hpp>
#include <affcomp/linalg.hpp>
#include <affcomp/projective.hpp>
#include <affcomp/chart.hpp>
#include <affcomp/reguli.hpp>
#include <affcomp/dualspread.hpp>
