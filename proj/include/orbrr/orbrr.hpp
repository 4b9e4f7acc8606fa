#pragma once

#include "orbrr/rational.hpp"
#include "orbrr/laurent.hpp"
#include "orbrr/rational_fn.hpp"
#include "orbrr/invmod.hpp"
#include "orbrr/dedekind.hpp"
#include "orbrr/icecream.hpp"
#include "orbrr/hilbert.hpp"
#include "orbrr/cy3.hpp"
#include "orbrr/io.hpp"
