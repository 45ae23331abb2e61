#ifndef LAMRES_LAMRES_HPP_
#define LAMRES_LAMRES_HPP_

#include "lamres/answer_sets.hpp"
#include "lamres/conflict.hpp"
#include "lamres/error.hpp"
#include "lamres/extension.hpp"
#include "lamres/groups.hpp"
#include "lamres/lambda_graph.hpp"
#include "lamres/natural_order.hpp"
#include "lamres/ordering.hpp"
#include "lamres/program.hpp"
#include "lamres/report.hpp"
#include "lamres/session.hpp"

#endif  // LAMRES_LAMRES_HPP_
