#pragma once

#include "ctxreason/catalog.hpp"
#include "ctxreason/context.hpp"
#include "ctxreason/dataset.hpp"
#include "ctxreason/errors.hpp"
#include "ctxreason/eval.hpp"
#include "ctxreason/hash.hpp"
#include "ctxreason/number.hpp"
#include "ctxreason/ontology.hpp"
#include "ctxreason/oracle.hpp"
#include "ctxreason/output.hpp"
#include "ctxreason/parallel.hpp"
#include "ctxreason/query.hpp"
#include "ctxreason/querygen.hpp"
#include "ctxreason/repl.hpp"
#include "ctxreason/rng.hpp"
#include "ctxreason/spoken.hpp"
#include "ctxreason/templates.hpp"
