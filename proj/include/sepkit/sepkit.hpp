#pragma once

#include "errors.hpp"
#include "graph.hpp"
#include "flow.hpp"
#include "leftmost.hpp"
#include "oracle.hpp"
#include "treewidth.hpp"
#include "io.hpp"
