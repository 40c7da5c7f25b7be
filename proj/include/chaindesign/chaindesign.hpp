#pragma once

#include "chaindesign/array.hpp"
#include "chaindesign/bigint.hpp"
#include "chaindesign/block.hpp"
#include "chaindesign/chain.hpp"
#include "chaindesign/design.hpp"
#include "chaindesign/feasibility.hpp"
#include "chaindesign/permutation.hpp"
#include "chaindesign/search.hpp"
#include "chaindesign/text.hpp"
#include "chaindesign/verify.hpp"
#include "chaindesign/wreath.hpp"
