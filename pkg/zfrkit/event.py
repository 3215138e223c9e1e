# Based on event module from Pyglet.

# ----------------------------------------------------------------------------
# pyglet
# Copyright (c) 2006-2008 Alex Holkner
# Copyright (c) 2008-2020 pyglet contributors
# Copyright (c) 2020 Oleg Eterevsky
# All rights reserved.
#
# Redistribution and use in source and binary forms, with or without
# modification, are permitted provided that the following conditions
# are met:
#
#  * Redistributions of source code must retain the above copyright
#    notice, this list of conditions and the following disclaimer.
#  * Redistributions in binary form must reproduce the above copyright
#    notice, this list of conditions and the following disclaimer in
#    the documentation and/or other materials provided with the
#    distribution.
#  * Neither the name of pyglet nor the names of its
#    contributors may be used to endorse or promote products
#    derived from this software without specific prior written
#    permission.
#
# THIS SOFTWARE IS PROVIDED BY THE COPYRIGHT HOLDERS AND CONTRIBUTORS
# "AS IS" AND ANY EXPRESS OR IMPLIED WARRANTIES, INCLUDING, BUT NOT
# LIMITED TO, THE IMPLIED WARRANTIES OF MERCHANTABILITY AND FITNESS
# FOR A PARTICULAR PURPOSE ARE DISCLAIMED. IN NO EVENT SHALL THE
# COPYRIGHT OWNER OR CONTRIBUTORS BE LIABLE FOR ANY DIRECT, INDIRECT,
# INCIDENTAL, SPECIAL, EXEMPLARY, OR CONSEQUENTIAL DAMAGES (INCLUDING,
# BUT NOT LIMITED TO, PROCUREMENT OF SUBSTITUTE GOODS OR SERVICES;
# LOSS OF USE, DATA, OR PROFITS; OR BUSINESS INTERRUPTION) HOWEVER
# CAUSED AND ON ANY THEORY OF LIABILITY, WHETHER IN CONTRACT, STRICT
# LIABILITY, OR TORT (INCLUDING NEGLIGENCE OR OTHERWISE) ARISING IN
# ANY WAY OUT OF THE USE OF THIS SOFTWARE, EVEN IF ADVISED OF THE
# POSSIBILITY OF SUCH DAMAGE.
# ----------------------------------------------------------------------------

"""Event dispatch for verification progress.

Suites do not write reports themselves. They fire events on a
`CheckDispatcher`, and listeners decide what to do with them:

    dispatcher = CheckDispatcher()
    collector = ReportCollector()
    dispatcher.push_handlers(collector, LoggingListener())

    dispatcher.dispatch_event('on_suite_start', 'poly')
    dispatcher.dispatch_event('on_check', record)
    dispatcher.dispatch_event('on_suite_end', 'poly', 5, 0, 0.01)

A handler is a function named after its event, a method of a pushed object,
or any callable passed as a keyword argument:

    dispatcher.push_handlers(on_check=records.append)

Handlers run from the highest priority down. Within one priority the
handler pushed last runs first. Priority comes from the `priority` argument
of `push_handlers` or from the `@priority` decorator. A handler that returns
`EVENT_HANDLED` stops the propagation.

Bound methods are held through weak references, so pushing a listener does
not keep it alive. Dead handlers disappear from the queues on their own.
"""

import inspect
import logging
import threading
from functools import partial
from weakref import WeakMethod

logger = logging.getLogger(__name__)

EVENT_HANDLED = True
EVENT_UNHANDLED = None


class EventException(Exception):
    """An unknown event, or a handler that cannot be attached."""
    pass


def priority(prio=0):
    """Decorator setting the priority of a handler function or method."""
    def wrap(func):
        func.__priority = prio
        return func
    return wrap


class EventDispatcher(object):
    """Priority-ordered event dispatcher.

    Subclasses declare their events with `register_event_type`.
    """
    event_types = ()

    def __init__(self):
        # {'on_event': [(priority, handler), ...]}, highest priority first.
        self._handlers = {}

    @classmethod
    def register_event_type(cls, name):
        if 'event_types' not in cls.__dict__:
            cls.event_types = tuple(cls.event_types)
        if name not in cls.event_types:
            cls.event_types += (name,)

    def _check_event(self, name):
        if name not in self.event_types:
            raise EventException(
                'Unknown event "{}". Expected one of {}'.format(
                    name, ', '.join(self.event_types)))

    def _event_names(self, handler):
        """Event names served by a function or by the methods of an object."""
        if inspect.isroutine(handler):
            yield handler.__name__
        else:
            for name in self.event_types:
                if callable(getattr(handler, name, None)):
                    yield name

    def _drop_dead(self, name, weak_method):
        self._handlers[name] = [
            entry for entry in self._handlers.get(name, ())
            if entry[1] is not weak_method]

    def push_handler(self, name, handler, priority=None):
        """Adds one handler for the event `name`.

        A non-callable handler must have a method called `name`.
        """
        self._check_event(name)
        if not callable(handler):
            method = getattr(handler, name, None)
            if not callable(method):
                raise EventException('{!r} has no method "{}"'.format(
                    handler, name))
            handler = method
        if priority is None:
            priority = getattr(handler, '__priority', 0)
            if type(priority) not in (int, float):
                # Mocks answer every attribute.
                priority = 0
        if inspect.ismethod(handler):
            handler = WeakMethod(handler, partial(self._drop_dead, name))
        queue = self._handlers.setdefault(name, [])
        i = 0
        while i < len(queue) and queue[i][0] > priority:
            i += 1
        queue.insert(i, (priority, handler))

    def push_handlers(self, *args, priority=None, **kwargs):
        """Adds handlers given as functions, objects or keyword arguments.

        Raises:
            EventException: for a keyword that is not a registered event,
                or a function whose name is not one.
        """
        for handler in args:
            for name in self._event_names(handler):
                self.push_handler(name, handler, priority)
        for name, handler in kwargs.items():
            self.push_handler(name, handler, priority)

    @staticmethod
    def _resolve(handler):
        return handler() if isinstance(handler, WeakMethod) else handler

    def remove_handler(self, handler, name=None):
        """Removes a handler, or every method bound to an object.

        Without a name the handler is removed from all events. Removing
        a handler that is not attached is not an error.
        """
        names = [name] if name is not None else list(self._handlers)
        for event_name in names:
            kept = []
            for entry in self._handlers.get(event_name, ()):
                registered = self._resolve(entry[1])
                if (registered is handler or
                        getattr(registered, '__self__', None) is handler):
                    continue
                kept.append(entry)
            if event_name in self._handlers:
                self._handlers[event_name] = kept

    def remove_handlers(self, *args, **kwargs):
        for handler in args:
            self.remove_handler(handler)
        for name, handler in kwargs.items():
            self.remove_handler(handler, name)

    def dispatch_event(self, event_type, *args):
        """Calls the handlers of `event_type` until one returns
        `EVENT_HANDLED`, and returns that value or `EVENT_UNHANDLED`."""
        self._check_event(event_type)
        for _, handler in list(self._handlers.get(event_type, ())):
            handler = self._resolve(handler)
            if handler is None:
                continue
            try:
                if handler(*args):
                    return EVENT_HANDLED
            except TypeError as exception:
                self._raise_dispatch_exception(event_type, args, handler,
                                               exception)
        return EVENT_UNHANDLED

    def _raise_dispatch_exception(self, event_type, args, handler, exception):
        """Turns an argument-count mismatch into a readable TypeError.

        Any other TypeError is re-raised unchanged.
        """
        try:
            inspect.signature(handler).bind(*args)
        except TypeError:
            pass
        except ValueError:
            # No signature available for some builtins.
            raise exception
        else:
            raise exception
        name = getattr(handler, '__qualname__', repr(handler))
        code = getattr(handler, '__code__', None)
        where = ' at {}:{}'.format(code.co_filename,
                                   code.co_firstlineno) if code else ''
        raise TypeError('Event "{}" was dispatched with {} arguments, which '
                        'handler {}{} does not accept'.format(
                            event_type, len(args), name, where)) from exception


class CheckDispatcher(EventDispatcher):
    """Dispatcher for suite progress. Safe to use from worker threads.

    Events:
        on_suite_start(suite)
        on_check(record)
        on_suite_end(suite, passed, failed, runtime)
    """

    def __init__(self):
        super().__init__()
        self._lock = threading.RLock()

    def push_handler(self, name, handler, priority=None):
        with self._lock:
            super().push_handler(name, handler, priority)

    def remove_handler(self, handler, name=None):
        with self._lock:
            super().remove_handler(handler, name)

    def dispatch_event(self, event_type, *args):
        with self._lock:
            return super().dispatch_event(event_type, *args)


CheckDispatcher.register_event_type('on_suite_start')
CheckDispatcher.register_event_type('on_check')
CheckDispatcher.register_event_type('on_suite_end')


class LoggingListener(object):
    """Logs suite progress and failing checks."""

    def on_suite_start(self, suite):
        logger.debug('Suite %s started', suite)

    def on_check(self, record):
        if not record.passed:
            logger.warning('%s.%s failed: computed %s, expected %s, margin %s',
                           record.suite, record.check_id, record.computed,
                           record.expected, record.margin)

    def on_suite_end(self, suite, passed, failed, runtime):
        logger.info('Suite %s: %d passed, %d failed in %.2fs', suite, passed,
                    failed, runtime)
