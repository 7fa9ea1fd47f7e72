#pragma once

#include "corpus.hpp"
#include "error.hpp"
#include "evaluator.hpp"
#include "layout.hpp"
#include "partition.hpp"
#include "stats.hpp"
#include "unicode.hpp"
