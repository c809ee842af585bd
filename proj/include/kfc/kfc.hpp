#pragma once
// Umbrella header for the single-file knowledge container library.

#include "kfc/bench.hpp"
#include "kfc/container.hpp"
#include "kfc/error.hpp"
#include "kfc/glob.hpp"
#include "kfc/ingest.hpp"
#include "kfc/normalize.hpp"
#include "kfc/query.hpp"
#include "kfc/sha256.hpp"
#include "kfc/sqlite.hpp"
#include "kfc/textindex.hpp"
#include "kfc/types.hpp"
#include "kfc/unicode.hpp"
