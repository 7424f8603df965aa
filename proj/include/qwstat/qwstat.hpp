#pragma once

#include "qwstat/arcs.hpp"
#include "qwstat/bounds.hpp"
#include "qwstat/common.hpp"
#include "qwstat/generators.hpp"
#include "qwstat/graph.hpp"
#include "qwstat/io.hpp"
#include "qwstat/stationary.hpp"
#include "qwstat/walk.hpp"
