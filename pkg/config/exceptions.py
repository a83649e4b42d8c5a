"""
Custom exceptions for the phase-factor engine.
"""


class EngineError(ValueError):
    """Base engine error exception."""
    exit_code = 1
    default_code = 'engine_error'
    default_detail = '计算引擎错误'

    def __init__(self, detail=None, code=None, exit_code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code or self.default_code
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(self.detail)

    def get_full_details(self):
        return {'code': self.code, 'detail': str(self.detail)}


class ConfigError(EngineError):
    """Invalid sweep configuration or command-line flags."""
    exit_code = 2
    default_code = 'config_error'
    default_detail = '配置错误'

    def __init__(self, detail=None, code=None, errors=None):
        super().__init__(detail, code)
        self.errors = errors or {}

    def get_full_details(self):
        details = super().get_full_details()
        details['errors'] = self.errors
        return details


class StateError(EngineError):
    """Inconsistent kets, ensembles or built-in state parameters."""
    exit_code = 2
    default_code = 'state_error'
    default_detail = '量子态参数错误'


class OracleGuardError(EngineError):
    """Truncated Fock space too small for the requested state or drive."""
    exit_code = 2
    default_code = 'oracle_guard'
    default_detail = '截断空间不满足精度要求'


class OracleCheckFailed(EngineError):
    """Closed-form engine disagrees with the dense oracle."""
    exit_code = 3
    default_code = 'oracle_mismatch'
    default_detail = '解析结果与数值验证不一致'


class DslParseError(EngineError):
    """State DSL diagnostic with position and expected-token set."""
    exit_code = 4
    default_code = 'parse_error'
    default_detail = '状态表达式解析失败'

    def __init__(self, detail=None, code=None, offset=0, line=1, column=1, expected=()):
        self.offset = offset
        self.line = line
        self.column = column
        self.expected = tuple(sorted(expected))
        super().__init__(detail, code)

    def __str__(self):
        message = f'{self.line}:{self.column}: {self.detail}'
        if self.expected:
            message += f" (expected one of: {', '.join(self.expected)})"
        return message

    def get_full_details(self):
        details = super().get_full_details()
        details.update({
            'line': self.line,
            'column': self.column,
            'offset': self.offset,
            'expected': list(self.expected),
        })
        return details


# Error codes mapping
ERROR_CODES = {
    # Configuration errors (1000-1099)
    1001: ('配置校验失败', ConfigError.exit_code),
    1002: ('未知的图表预设', ConfigError.exit_code),
    1003: ('频率个数与模式数不一致', ConfigError.exit_code),
    1004: ('参数超出定义域', EngineError.exit_code),

    # State errors (2000-2099)
    2001: ('模式数不一致', StateError.exit_code),
    2002: ('Fock 态与相干态不能混用', StateError.exit_code),
    2003: ('缺少量子态参数', StateError.exit_code),
    2004: ('叠加态范数为零', StateError.exit_code),
    2005: ('密度算符不是半正定的', StateError.exit_code),

    # Oracle errors (3000-3099)
    3001: ('截断空间保护条件不满足', OracleGuardError.exit_code),
    3002: ('数值验证偏差超过容差', OracleCheckFailed.exit_code),

    # DSL errors (4000-4099)
    4001: ('词法错误', DslParseError.exit_code),
    4002: ('语法错误', DslParseError.exit_code),
    4003: ('模式数不一致', DslParseError.exit_code),
    4004: ('态的类型不一致', DslParseError.exit_code),
    4005: ('混合概率之和不为 1', DslParseError.exit_code),
}

CODE_NUMBERS = {
    'config_error': 1001,
    'unknown_preset': 1002,
    'omega_mismatch': 1003,
    'invalid_argument': 1004,
    'mode_mismatch': 2001,
    'kind_mismatch': 2002,
    'missing_params': 2003,
    'zero_norm': 2004,
    'not_positive': 2005,
    'oracle_guard': 3001,
    'oracle_mismatch': 3002,
    'lexical_error': 4001,
    'syntax_error': 4002,
    'dsl_mode_mismatch': 4003,
    'dsl_kind_mismatch': 4004,
    'probability_sum': 4005,
}


def get_error_response(error_code, extra_message=None, errors=None):
    """Get standardized error response."""
    message, _exit_code = ERROR_CODES.get(error_code, ('未知错误', EngineError.exit_code))
    if extra_message:
        message = f"{message}: {extra_message}"

    return {
        'code': error_code,
        'message': message,
        'errors': errors or {}
    }


def error_response_for(exc):
    """Build the standardized payload for an EngineError instance."""
    number = CODE_NUMBERS.get(exc.code, 0)
    return get_error_response(number, str(exc.detail), exc.get_full_details())
