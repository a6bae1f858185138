#pragma once

#include "nhqm/antilinear.hpp"
#include "nhqm/biortho.hpp"
#include "nhqm/complex_format.hpp"
#include "nhqm/config.hpp"
#include "nhqm/core.hpp"
#include "nhqm/dynamics.hpp"
#include "nhqm/eig.hpp"
#include "nhqm/intertwine.hpp"
#include "nhqm/report.hpp"
#include "nhqm/two_level.hpp"
