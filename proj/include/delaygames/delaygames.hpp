#pragma once

#include <delaygames/arena.hpp>
#include <delaygames/automaton.hpp>
#include <delaygames/bigint.hpp>
#include <delaygames/bitset.hpp>
#include <delaygames/errors.hpp>
#include <delaygames/lookahead.hpp>
#include <delaygames/parity_game.hpp>
#include <delaygames/parity_solver.hpp>
#include <delaygames/tracking.hpp>
