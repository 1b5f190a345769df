#pragma once

#include <stdexcept>
#include <string>

namespace transmute
{
	/// Base class of every exception thrown by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// A documented precondition of an operation was violated.
	class PreconditionError : public Error
	{
	public:
		using Error::Error;
	};

	/// A nonzero mode has |mu| tau >= R, outside the scheme's dispersion domain.
	class FrequencyOutOfSchemeDomain : public Error
	{
	public:
		using Error::Error;
	};

	/// inverse_g asked to invert a value outside f([-delta, delta]).
	class TargetOutOfRange : public Error
	{
	public:
		using Error::Error;
	};

	/// A kernel representation was fed a state that is not filtered at scale delta / tau.
	class UnfilteredInput : public Error
	{
	public:
		using Error::Error;
	};

	/// A decay measurement was requested at a point on the group-velocity cone.
	class PointInsideCone : public Error
	{
	public:
		using Error::Error;
	};
} // namespace transmute
