#pragma once

#include "hompres/error.hpp"
#include "hompres/structure.hpp"
#include "hompres/graph.hpp"
#include "hompres/structure_io.hpp"
#include "hompres/formula.hpp"
#include "hompres/formula_parser.hpp"
#include "hompres/evaluate.hpp"
#include "hompres/locality.hpp"
#include "hompres/homomorphism.hpp"
#include "hompres/isomorphism.hpp"
#include "hompres/scattered.hpp"
#include "hompres/minor.hpp"
#include "hompres/grad.hpp"
#include "hompres/dichotomy.hpp"
#include "hompres/quasiwide.hpp"
#include "hompres/plebeian.hpp"
#include "hompres/minimal_models.hpp"
#include "hompres/counterexample.hpp"
#include "hompres/ajtai_gurevich.hpp"
