# Copyright (c) 2025 CoReason, Inc.
#
# This software is proprietary and dual-licensed.
# Licensed under the Prosperity Public License 3.0 (the "License").
# A copy of the license is available at https://prosperitylicense.com/versions/3.0.0
# For details, see the LICENSE file.
# Commercial use beyond a 30-day trial requires a separate license.
#
# Source Code: https://github.com/CoReason-AI/coreason_schubert

import sys
from unittest.mock import MagicMock, patch

from coreason_schubert.utils.logger import configure_logging, set_console_level


def test_logger_mkdir_called() -> None:
    """
    Ensure that `configure_logging()` calls mkdir() when the logs directory doesn't exist.
    """
    with patch("coreason_schubert.utils.logger.Path") as mock_path_cls:
        mock_path_instance = MagicMock()
        mock_path_cls.return_value = mock_path_instance
        mock_path_instance.exists.return_value = False

        with patch("coreason_schubert.utils.logger.loguru_logger"):
            configure_logging()

        mock_path_instance.mkdir.assert_called_with(parents=True, exist_ok=True)
    configure_logging()


def test_logger_mkdir_not_called() -> None:
    """
    Ensure that `configure_logging()` does NOT call mkdir() when the logs directory exists.
    """
    with patch("coreason_schubert.utils.logger.Path") as mock_path_cls:
        mock_path_instance = MagicMock()
        mock_path_cls.return_value = mock_path_instance
        mock_path_instance.exists.return_value = True

        with patch("coreason_schubert.utils.logger.loguru_logger"):
            configure_logging()

        mock_path_instance.mkdir.assert_not_called()
    configure_logging()


def test_set_console_level_replaces_sink() -> None:
    """The previous console sink is removed before the new level is installed."""
    with patch("coreason_schubert.utils.logger.loguru_logger") as mock_logger:
        mock_logger.add.side_effect = [11, 12]
        set_console_level("DEBUG")
        set_console_level("WARNING")

        mock_logger.remove.assert_any_call(11)
        levels = [call.kwargs["level"] for call in mock_logger.add.call_args_list]
        assert levels == ["DEBUG", "WARNING"]
        assert mock_logger.add.call_args_list[0].args[0] is sys.stderr
    # restore real sinks for the rest of the session
    configure_logging()
