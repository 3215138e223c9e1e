import gc
import threading
import unittest
from unittest.mock import Mock

from .event import (EVENT_HANDLED, EVENT_UNHANDLED, CheckDispatcher,
                    EventDispatcher, EventException, LoggingListener,
                    priority)
from .report import CheckRecord


def _record(passed=True):
    return CheckRecord('poly', 'objective', 0.0598, 0.0599, 1e-6, 1e-4,
                       passed, 'test')


class Listener(object):
    def __init__(self):
        self.records = []

    def on_check(self, record):
        self.records.append(record)


class EventDispatcherTest(unittest.TestCase):
    def setUp(self):
        self.dispatcher = CheckDispatcher()

    def test_keyword_handler(self):
        handler = Mock(return_value=None)
        self.dispatcher.push_handlers(on_check=handler)
        record = _record()
        self.assertIs(self.dispatcher.dispatch_event('on_check', record),
                      EVENT_UNHANDLED)
        handler.assert_called_once_with(record)

    def test_object_handler(self):
        listener = Listener()
        self.dispatcher.push_handlers(listener)
        self.dispatcher.dispatch_event('on_check', _record())
        self.assertEqual(len(listener.records), 1)

    def test_function_handler(self):
        calls = []

        def on_suite_start(suite):
            calls.append(suite)

        self.dispatcher.push_handlers(on_suite_start)
        self.dispatcher.dispatch_event('on_suite_start', 'poly')
        self.assertEqual(calls, ['poly'])

    def test_handled_stops_propagation(self):
        first = Mock(return_value=EVENT_HANDLED)
        second = Mock(return_value=None)
        self.dispatcher.push_handlers(on_check=second)
        self.dispatcher.push_handlers(on_check=first)
        self.assertIs(self.dispatcher.dispatch_event('on_check', _record()),
                      EVENT_HANDLED)
        first.assert_called_once()
        second.assert_not_called()

    def test_priority(self):
        order = []

        @priority(5)
        def on_check(record):
            order.append('high')

        self.dispatcher.push_handlers(on_check=lambda r: order.append('low'))
        self.dispatcher.push_handlers(on_check)
        self.dispatcher.push_handlers(on_check=lambda r: order.append('mid'),
                                      priority=1)
        self.dispatcher.dispatch_event('on_check', _record())
        self.assertEqual(order, ['high', 'mid', 'low'])

    def test_unknown_event(self):
        with self.assertRaises(EventException):
            self.dispatcher.dispatch_event('on_draw')
        with self.assertRaises(EventException):
            self.dispatcher.push_handlers(on_draw=Mock())

        def on_draw():
            pass

        with self.assertRaises(EventException):
            self.dispatcher.push_handlers(on_draw)

    def test_object_without_method(self):
        with self.assertRaises(EventException):
            self.dispatcher.push_handler('on_check', object())

    def test_dead_listener_is_dropped(self):
        listener = Listener()
        self.dispatcher.push_handlers(listener)
        del listener
        gc.collect()
        self.assertIs(self.dispatcher.dispatch_event('on_check', _record()),
                      EVENT_UNHANDLED)
        self.assertEqual(self.dispatcher._handlers['on_check'], [])

    def test_remove_handler(self):
        listener = Listener()
        handler = Mock(return_value=None)
        self.dispatcher.push_handlers(listener, on_check=handler)
        self.dispatcher.remove_handler(listener)
        self.dispatcher.dispatch_event('on_check', _record())
        self.assertEqual(listener.records, [])
        handler.assert_called_once()
        self.dispatcher.remove_handlers(on_check=handler)
        self.dispatcher.dispatch_event('on_check', _record())
        handler.assert_called_once()

    def test_wrong_arguments(self):
        def on_suite_end(suite):
            pass

        self.dispatcher.push_handlers(on_suite_end)
        with self.assertRaisesRegex(TypeError, 'does not accept'):
            self.dispatcher.dispatch_event('on_suite_end', 'poly', 1, 0, 0.1)

    def test_handler_type_error_passes_through(self):
        def on_check(record):
            raise TypeError('inner')

        self.dispatcher.push_handlers(on_check)
        with self.assertRaisesRegex(TypeError, 'inner'):
            self.dispatcher.dispatch_event('on_check', _record())

    def test_register_event_type(self):
        class Dispatcher(EventDispatcher):
            pass

        Dispatcher.register_event_type('on_ping')
        Dispatcher.register_event_type('on_ping')
        self.assertEqual(Dispatcher.event_types, ('on_ping',))
        self.assertEqual(EventDispatcher.event_types, ())

    def test_threads(self):
        listener = Listener()
        self.dispatcher.push_handlers(listener)

        def fire():
            for _ in range(200):
                self.dispatcher.dispatch_event('on_check', _record())

        threads = [threading.Thread(target=fire) for _ in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        self.assertEqual(len(listener.records), 800)


class LoggingListenerTest(unittest.TestCase):
    def test_failure_is_logged(self):
        listener = LoggingListener()
        with self.assertLogs('zfrkit.event', level='WARNING') as logs:
            listener.on_check(_record(passed=False))
        self.assertIn('poly.objective failed', logs.output[0])

    def test_suite_end(self):
        with self.assertLogs('zfrkit.event', level='INFO') as logs:
            LoggingListener().on_suite_end('poly', 3, 1, 0.5)
        self.assertIn('3 passed, 1 failed', logs.output[0])


if __name__ == '__main__':
    unittest.main()
