from datetime import datetime

from src.logging_service import LogEntry, LoggingService, LogLevel, get_logging_service


def test_entry_defaults_to_now():
    before = datetime.now()
    entry = LogEntry(LogLevel.WARNING, "window too small")
    assert before <= entry.timestamp <= datetime.now()
    assert entry.level is LogLevel.WARNING


def test_buffer_keeps_most_recent_entries():
    service = LoggingService(max_entries=3)
    for k in range(5):
        service.info(f"message {k}")
    assert [e.message for e in service.get_entries()] == ["message 2", "message 3", "message 4"]


def test_filter_and_limit():
    service = LoggingService()
    service.debug("a")
    service.info("b")
    service.warning("c")
    service.info("d")
    assert [e.message for e in service.get_entries(LogLevel.INFO)] == ["b", "d"]
    assert [e.message for e in service.get_entries(limit=2)] == ["c", "d"]


def test_console_goes_to_stderr_at_warning(capsys):
    service = get_logging_service()
    service.info("quiet")
    service.warning("loud")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err == "[WARNING] loud\n"


def test_set_console_level(capsys):
    service = get_logging_service()
    service.set_console_level(LogLevel.DEBUG)
    service.debug("shown")
    service.set_console_level("error")
    service.warning("hidden")
    assert capsys.readouterr().err == "[DEBUG] shown\n"
    assert len(service.get_entries()) == 2


def test_global_instance_is_shared(capsys):
    get_logging_service().error("once")
    assert get_logging_service() is get_logging_service()
    assert [e.message for e in get_logging_service().get_entries()] == ["once"]
    assert capsys.readouterr().err == "[ERROR] once\n"
