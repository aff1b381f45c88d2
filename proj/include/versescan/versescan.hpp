// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "versescan/analytics.hpp"
#include "versescan/artifact.hpp"
#include "versescan/category.hpp"
#include "versescan/corpus.hpp"
#include "versescan/error.hpp"
#include "versescan/hash.hpp"
#include "versescan/ingest.hpp"
#include "versescan/match_file.hpp"
#include "versescan/matcher.hpp"
#include "versescan/normalizer.hpp"
#include "versescan/pipeline.hpp"
#include "versescan/records.hpp"
#include "versescan/utf8.hpp"
