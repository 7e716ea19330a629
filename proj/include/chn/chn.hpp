#ifndef CHN_CHN_HPP
#define CHN_CHN_HPP

#include <chn/field.hpp>
#include <chn/linalg.hpp>
#include <chn/complex_matrix.hpp>
#include <chn/algebra.hpp>
#include <chn/subalgebra.hpp>
#include <chn/geometry.hpp>
#include <chn/classify.hpp>
#include <chn/corpus.hpp>
#include <chn/io.hpp>
#include <chn/selfcheck.hpp>

#endif  // CHN_CHN_HPP
